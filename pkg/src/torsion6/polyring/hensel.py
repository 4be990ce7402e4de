"""Multifactor Hensel lifting by a binary factor tree.

Each internal node splits its polynomial into two coprime halves, which
are lifted with the quadratic two-factor step; children are then lifted
against their parent's lifted product.  Factors are kept monic, so the
lifted factors multiply to lc(f)^-1 * f modulo p^k.
"""

from __future__ import annotations

from typing import Sequence

from . import _zx
from .modp import ModPolynomial, xgcd_mod_p


def _lift_pair(f, g, h, s, t, p, k):
    """Lift monic f = g*h (mod p) with s*g + t*h = 1 to modulus p^k.

    All arguments are integer lists.  h should be the smaller factor: it is
    the divisor in both division steps, which keeps those steps cheap.
    """
    target = p**k
    m = p
    while m < target:
        M = min(m * m, target)
        e = _zx.reduce(_zx.sub(f, _zx.mul_mod(g, h, M)), M)
        q, r = _zx.divmod_mod(_zx.mul_mod(s, e, M), h, M)
        g = _zx.reduce(_zx.add(_zx.add(g, _zx.mul_mod(t, e, M)), _zx.mul_mod(q, g, M)), M)
        h = _zx.reduce(_zx.add(h, r), M)
        b = _zx.reduce(
            _zx.sub(_zx.add(_zx.mul_mod(s, g, M), _zx.mul_mod(t, h, M)), [1]), M
        )
        c, d = _zx.divmod_mod(_zx.mul_mod(s, b, M), h, M)
        s = _zx.reduce(_zx.sub(s, d), M)
        t = _zx.reduce(_zx.sub(_zx.sub(t, _zx.mul_mod(t, b, M)), _zx.mul_mod(c, g, M)), M)
        m = M
    return g, h


def _split(factors: list[list[int]]):
    """Split factor lists into two halves of roughly equal total degree.

    Greedy by descending degree, so a single large block ends up alone on
    one side and the small factors gather on the other.
    """
    order = sorted(range(len(factors)), key=lambda i: -(len(factors[i]) - 1))
    left, right, dl, dr = [], [], 0, 0
    for i in order:
        if dl <= dr:
            left.append(i)
            dl += len(factors[i]) - 1
        else:
            right.append(i)
            dr += len(factors[i]) - 1
    return sorted(left), sorted(right)


def _product_mod(fs, m):
    r = [1]
    for g in fs:
        r = _zx.mul_mod(r, g, m)
    return r


def _lift_tree(f, factors, p, k):
    if len(factors) == 1:
        return [_zx.reduce(f, p**k)]
    li, ri = _split(factors)
    left = [factors[i] for i in li]
    right = [factors[i] for i in ri]
    g0 = _product_mod(left, p)
    h0 = _product_mod(right, p)
    if len(g0) < len(h0):
        g0, h0, left, right, li, ri = h0, g0, right, left, ri, li
    s, t = xgcd_mod_p(ModPolynomial(g0, p), ModPolynomial(h0, p))
    g, h = _lift_pair(f, g0, h0, list(s.coefficients), list(t.coefficients), p, k)
    out = [None] * len(factors)
    for idx, part in zip(li, _lift_tree(g, left, p, k)):
        out[idx] = part
    for idx, part in zip(ri, _lift_tree(h, right, p, k)):
        out[idx] = part
    return out


def hensel_lift(
    f: Sequence[int], factors: Sequence[ModPolynomial], k: int
) -> list[ModPolynomial]:
    """Lift a coprime factorization of f mod p to one mod p^k.

    f is an integer polynomial whose leading coefficient is a unit mod p and
    whose reduction is lc(f) times the product of the given factors.  Returns
    monic lifts in the input order; their product is lc(f)^-1 * f mod p^k.
    """
    if not factors:
        raise ValueError("empty factorization")
    p = factors[0].modulus
    if any(g.modulus != p for g in factors):
        raise ValueError("factors have different moduli")
    if k < 1:
        raise ValueError("precision must be at least 1")
    f = [int(c) for c in f]
    lc = f[-1]
    if lc % p == 0:
        raise ValueError("leading coefficient divisible by p")
    monic = [g.monic() for g in factors]
    for i in range(len(monic)):
        for j in range(i + 1, len(monic)):
            if monic[i].gcd(monic[j]).degree > 0:
                raise ValueError("not coprime")
    fm = _zx.reduce(_zx.scale(f, pow(lc, -1, p**k)), p**k)
    prod = ModPolynomial(_product_mod([list(g.coefficients) for g in monic], p), p)
    if prod != ModPolynomial(fm, p):
        raise ValueError("factors do not multiply to f mod p")
    lifted = _lift_tree(fm, [list(g.coefficients) for g in monic], p, k)
    return [ModPolynomial(g, p**k) for g in lifted]
