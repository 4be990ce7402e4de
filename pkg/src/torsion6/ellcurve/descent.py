"""Rank bounds by descent via 2-isogeny.

For E: y^2 = x(x^2 + A x + B) and its isogenous E': Y^2 = X(X^2 - 2A X + A^2 - 4B),
the connecting map sends E(Q) into classes d | B of Q*/Q*^2, and d is in the
image only if  N^2 = d M^4 + A M^2 e^2 + (B/d) e^4  has a nontrivial solution.
We count the d for which that quartic is solvable over R and over every Q_p
with p | 2 B (A^2 - 4B); then rank E(Q) <= log2|S| + log2|S'| - 2.

Local tests only ever refute.  A class the search cannot refute counts as
solvable, so the bound is always an upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..polyring.primes import factorint, squarefree_part
from ..polyring.rational import RationalPolynomial, rational_roots
from .curve import EllipticCurveQ

MAX_DEPTH = 14


@dataclass(frozen=True)
class DescentCertificate:
    curve: EllipticCurveQ
    A: int
    B: int
    shift: Fraction  # x_E = x_model + shift / u^2 bookkeeping, see translate
    scale: int
    image: tuple[int, ...]
    image_dual: tuple[int, ...]

    @property
    def rank_bound(self) -> int:
        return _log2(len(self.image)) + _log2(len(self.image_dual)) - 2

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "model": {"A": self.A, "B": self.B},
            "translation": [self.shift.numerator, self.shift.denominator],
            "scale": self.scale,
            "image_phi": list(self.image),
            "image_phi_dual": list(self.image_dual),
            "rank_bound": self.rank_bound,
        }


def _log2(n: int) -> int:
    k = 0
    while (1 << k) < n:
        k += 1
    if (1 << k) != n:
        raise ArithmeticError("Selmer set size %d is not a power of two" % n)
    return k


def _val(n: int, p: int) -> int:
    if n == 0:
        return 10**9
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_padic_square_unit_class(c: int, p: int) -> bool:
    """c != 0 integer; is c a square in Q_p?"""
    v = _val(c, p)
    if v % 2:
        return False
    u = c // p**v
    if p == 2:
        return u % 8 == 1
    return pow(u % p, (p - 1) // 2, p) == 1


def _shift_poly(cs: list[int], t0: int, pk: int) -> list[int]:
    """Coefficients of g(t0 + pk*u) in u."""
    out = [0] * len(cs)
    # Horner with (t0 + pk u)
    for c in reversed(cs):
        new = [0] * len(cs)
        for i, v in enumerate(out):
            if v:
                new[i] += v * t0
                if i + 1 < len(cs):
                    new[i + 1] += v * pk
        new[0] += c
        out = new
    return out


def _zp_square_value(cs: list[int], p: int, t0: int = 0, k: int = 0, depth: int = 0) -> bool:
    """Is g(t) a square in Q_p for some t in t0 + p^k Z_p?

    Returns True when it cannot refute within MAX_DEPTH subdivisions.
    """
    pk = p**k
    g = _shift_poly(cs, t0, pk)
    c0 = g[0]
    if c0 == 0:
        return True
    v0 = _val(c0, p)
    vmin = min((_val(c, p) for c in g[1:] if c), default=10**9)
    margin = 3 if p == 2 else 1
    if vmin - v0 >= margin:
        # g = c0 * (1 + w) with 1 + w a square for every u
        return _is_padic_square_unit_class(c0, p)
    if depth >= MAX_DEPTH:
        return True
    return any(_zp_square_value(cs, p, t0 + r * pk, k + 1, depth + 1) for r in range(p))


def _locally_solvable(d: int, A: int, B: int, primes) -> bool:
    c = B // d
    # real place: d T^2 + A T + c > 0 for some T >= 0
    if d < 0 and c < 0:
        if A <= 0 or A * A - 4 * d * c <= 0:
            return False
    for p in primes:
        # chart e = 1: N^2 = d M^4 + A M^2 + c, M in Z_p
        if _zp_square_value([c, 0, A, 0, d], p):
            continue
        # chart M = 1, e in p Z_p: N^2 = d + A e^2 + c e^4
        if _zp_square_value([d, 0, A, 0, c], p, 0, 1):
            continue
        return False
    return True


def _selmer(A: int, B: int) -> tuple[int, ...]:
    primes = sorted(set(factorint(2 * B * (A * A - 4 * B))))
    ds = set()
    for p_set in _squarefree_divisors(B):
        for s in (1, -1):
            ds.add(s * p_set)
    return tuple(sorted(d for d in ds if _locally_solvable(d, A, B, primes)))


def _squarefree_divisors(n: int) -> list[int]:
    out = [1]
    for p in factorint(n):
        out = out + [d * p for d in out]
    return sorted(out)


def two_isogeny_model(E: EllipticCurveQ) -> tuple[int, int, Fraction, int]:
    """(A, B, x0, u): integral y^2 = x(x^2 + A x + B) isomorphic to E, where
    x_model = u^2 (x_E - x0) for the rational 2-torsion root x0."""
    roots = sorted(rational_roots(RationalPolynomial([E.b, E.a, 0, 1])))
    if not roots:
        raise ValueError("curve has no rational 2-torsion point")
    x0 = roots[0]
    A = 3 * x0
    B = 3 * x0 * x0 + E.a
    # scale so A, B are integers: (A, B) -> (u^2 A, u^4 B)
    u = 1
    while (A * u * u).denominator != 1 or (B * u**4).denominator != 1:
        u += 1
    return int(A * u * u), int(B * u**4), x0, u


def rank0_certificate_via_2isogeny(E: EllipticCurveQ) -> DescentCertificate:
    A, B, x0, u = two_isogeny_model(E)
    S = _selmer(A, B)
    S2 = _selmer(-2 * A, A * A - 4 * B)
    return DescentCertificate(E, A, B, x0, u, S, S2)


def all_rational_points_rank0(E: EllipticCurveQ):
    """Complete E(Q) when descent proves rank 0."""
    from .torsion import torsion_via_lutz_nagell

    cert = rank0_certificate_via_2isogeny(E)
    if cert.rank_bound != 0:
        raise ValueError("descent bound is %d, cannot certify rank 0" % cert.rank_bound)
    if E.is_integral():
        return torsion_via_lutz_nagell(E), cert
    model, u = E.integral_model()
    tors = torsion_via_lutz_nagell(model)
    from .curve import AffinePointQ
    from .torsion import TorsionResult

    pts = tuple(
        E.infinity if P.is_infinity else AffinePointQ(E, P.x / u**2, P.y / u**3) for P in tors.points
    )
    return TorsionResult(pts, tors.structure), cert
