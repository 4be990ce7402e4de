"""Polynomials over Z/mZ, with factorization when m is prime.

Internally coefficients live in numpy arrays, lowest degree first.  For
moduli below 2**24 the arrays are int64 (convolutions cannot overflow for
the degrees we meet); above that they fall back to Python-int object arrays
so the same code stays exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _zx
from .primes import is_prime

_NATIVE_LIMIT = 1 << 24


def _dtype(p: int):
    return np.int64 if p < _NATIVE_LIMIT else object


def _trim(a: np.ndarray) -> np.ndarray:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a[:n]


def _arr(coeffs: Iterable[int], p: int) -> np.ndarray:
    return _trim(np.array([int(c) % p for c in coeffs], dtype=_dtype(p)))


def _one(p):
    return np.array([1], dtype=_dtype(p))


def _mul(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return a[:0]
    if a.dtype == object or len(a) * len(b) < 64:
        return _trim(np.convolve(a, b) % p)
    # int64 convolution is exact while n*p^2 < 2^63; split otherwise
    if min(len(a), len(b)) * (p - 1) ** 2 < (1 << 62):
        return _trim(np.convolve(a, b) % p)
    lo_a, hi_a = a & 0xFFF, a >> 12
    r = np.convolve(lo_a, b) % p + (np.convolve(hi_a, b) % p) * (4096 % p)
    return _trim(r % p)


def _sub(a, b, p):
    n = max(len(a), len(b))
    r = np.zeros(n, dtype=a.dtype if len(a) else b.dtype)
    r[: len(a)] += a
    r[: len(b)] -= b
    return _trim(r % p)


def _add(a, b, p):
    n = max(len(a), len(b))
    r = np.zeros(n, dtype=a.dtype if len(a) else b.dtype)
    r[: len(a)] += a
    r[: len(b)] += b
    return _trim(r % p)


def _divmod(a, b, p):
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) - 1 < db:
        return a[:0], a
    a = a.copy()
    inv = pow(int(b[-1]), -1, p)
    q = np.zeros(len(a) - db, dtype=a.dtype)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            q[i - db] = c
            a[i - db : i + 1] = (a[i - db : i + 1] - c * b) % p
    return _trim(q), _trim(a[:db])


def _rem(a, b, p):
    return _divmod(a, b, p)[1]


def _monic(a, p):
    if len(a) == 0:
        return a
    return a * pow(int(a[-1]), -1, p) % p


def _gcd(a, b, p):
    while len(b):
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


def _mulmod(a, b, f, p):
    return _rem(_mul(a, b, p), f, p)


def _powmod(base, e, f, p):
    result = _one(p)
    base = _rem(base, f, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, f, p)
        e >>= 1
        if e:
            base = _mulmod(base, base, f, p)
    return _rem(result, f, p)


def _deriv(a, p):
    if len(a) <= 1:
        return a[:0]
    return _trim(a[1:] * np.arange(1, len(a), dtype=a.dtype) % p)


def _x(p):
    return np.array([0, 1], dtype=_dtype(p))


# --- factorization ----------------------------------------------------------

def _squarefree_decomposition(f, p):
    """Monic f -> list of (squarefree g_i, i) with f = prod g_i^i."""
    out = []
    i = 1
    df = _deriv(f, p)
    c = _gcd(f, df, p)
    w = _divmod(f, c, p)[0]
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((z, i))
        i += 1
        w = y
        c = _divmod(c, y, p)[0]
    if len(c) > 1:
        # c is a p-th power
        root = c[::p].copy()
        for g, k in _squarefree_decomposition(_trim(root), p):
            out.append((g, k * p))
    return out


def distinct_degree(f, p, max_degree: int | None = None):
    """Distinct-degree split of squarefree monic f.

    Returns (parts, rest): parts maps d to the product of all degree-d
    irreducible factors for d <= max_degree; rest is the product of the
    factors of larger degree (monic, possibly 1).
    """
    parts = {}
    g = f
    h = _x(p)
    d = 0
    while len(g) - 1 >= 2 * (d + 1):
        d += 1
        if max_degree is not None and d > max_degree:
            return parts, g
        h = _powmod(h, p, g, p)
        gd = _gcd(g, _sub(h, _x(p), p), p)
        if len(gd) > 1:
            parts[d] = gd
            g = _divmod(g, gd, p)[0]
            h = _rem(h, g, p)
    if len(g) > 1:
        deg = len(g) - 1
        if max_degree is None or deg <= max_degree:
            parts[deg] = g
            g = _one(p)
    return parts, g


def equal_degree(f, d, p, rng: random.Random):
    """Split monic squarefree f, all of whose factors have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    if n == 0:
        return []
    while True:
        r = _arr([rng.randrange(p) for _ in range(n)], p)
        if len(r) < 2:
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^(2^(d-1))
            t = r
            s = r
            for _ in range(d - 1):
                t = _mulmod(t, t, f, p)
                s = _add(s, t, p)
            g = _gcd(f, s, p)
        else:
            s = _powmod(r, (p**d - 1) // 2, f, p)
            g = _gcd(f, _sub(s, _one(p), p), p)
        if 1 < len(g) < len(f):
            h = _divmod(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def _sort_key(a):
    return (len(a), tuple(int(c) for c in a))


@dataclass(frozen=True)
class ModPolynomial:
    """Polynomial with coefficients in [0, modulus), lowest degree first."""

    modulus: int
    coefficients: tuple[int, ...]

    def __init__(self, coefficients: Sequence[int], modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        cs = [int(c) % modulus for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "modulus", int(modulus))
        object.__setattr__(self, "coefficients", tuple(cs))

    @classmethod
    def _wrap(cls, arr, p) -> "ModPolynomial":
        return cls([int(c) for c in arr], p)

    def _np(self):
        return np.array(self.coefficients, dtype=_dtype(self.modulus))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def _check(self, other):
        if self.modulus != other.modulus:
            raise ValueError("moduli differ")

    def __add__(self, other):
        self._check(other)
        m = self.modulus
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return ModPolynomial([x + y for x, y in zip(a, b)], m)

    def __neg__(self):
        return ModPolynomial([-c for c in self.coefficients], self.modulus)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPolynomial([c * other for c in self.coefficients], self.modulus)
        self._check(other)
        return ModPolynomial(
            _zx.mul_mod(list(self.coefficients), list(other.coefficients), self.modulus),
            self.modulus,
        )

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        q, r = _zx.divmod_mod(list(self.coefficients), list(other.coefficients), self.modulus)
        return ModPolynomial(q, self.modulus), ModPolynomial(r, self.modulus)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        r = 0
        for c in reversed(self.coefficients):
            r = (r * x + c) % self.modulus
        return r

    def monic(self) -> "ModPolynomial":
        if not self.coefficients:
            return self
        inv = pow(self.leading(), -1, self.modulus)
        return self * inv

    def reduce(self, m: int) -> "ModPolynomial":
        if self.modulus % m:
            raise ValueError("modulus %d does not divide %d" % (m, self.modulus))
        return ModPolynomial(self.coefficients, m)

    def gcd(self, other) -> "ModPolynomial":
        self._check(other)
        p = self.modulus
        return ModPolynomial._wrap(_gcd(self._np(), other._np(), p), p)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) if i == 0 else ("%d*x" % c if i == 1 else "%d*x^%d" % (c, i)))
        return (" + ".join(terms) or "0") + " (mod %d)" % self.modulus


def factor_mod_p(f: ModPolynomial, seed: int = 0) -> list[tuple[ModPolynomial, int]]:
    """Monic irreducible factors of f with multiplicities.

    The unit (leading coefficient) is dropped.  Output is sorted by degree,
    then coefficients, so it does not depend on the splitting order.
    """
    p = f.modulus
    if not is_prime(p):
        raise ValueError("modulus not prime")
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, k in _squarefree_decomposition(_monic(f._np(), p), p):
        parts, _ = distinct_degree(g, p)
        for d in sorted(parts):
            for h in equal_degree(parts[d], d, p, rng):
                out.append((h, k))
    out.sort(key=lambda t: (_sort_key(t[0]), t[1]))
    return [(ModPolynomial._wrap(h, p), k) for h, k in out]


def is_irreducible_mod_p(f: ModPolynomial) -> bool:
    p = f.modulus
    if f.degree < 1:
        return False
    g = _monic(f._np(), p)
    if len(_gcd(g, _deriv(g, p), p)) > 1:
        return False
    parts, rest = distinct_degree(g, p)
    return list(parts) == [f.degree] and len(rest) == 1


def degree_pattern(f: ModPolynomial, max_degree: int | None = None) -> dict[int, int]:
    """Counts of irreducible factor degrees of squarefree f, via DDF only.

    With max_degree set, factors above that degree are not counted.
    """
    p = f.modulus
    parts, _ = distinct_degree(_monic(f._np(), p), p, max_degree)
    return {d: (len(g) - 1) // d for d, g in sorted(parts.items())}


def small_factors_mod_p(f: ModPolynomial, bound: int, seed: int = 0):
    """Irreducible factors of squarefree f with degree <= bound, and the cofactor."""
    p = f.modulus
    rng = random.Random(seed)
    g = _monic(f._np(), p)
    parts, rest = distinct_degree(g, p, bound)
    small = []
    for d in sorted(parts):
        small.extend(equal_degree(parts[d], d, p, rng))
    small.sort(key=_sort_key)
    return [ModPolynomial._wrap(h, p) for h in small], ModPolynomial._wrap(rest, p)


def is_squarefree_mod_p(f: ModPolynomial) -> bool:
    p = f.modulus
    g = f._np()
    return len(_gcd(g, _deriv(g, p), p)) == 1


def xgcd_mod_p(g: ModPolynomial, h: ModPolynomial) -> tuple[ModPolynomial, ModPolynomial]:
    """s, t with s*g + t*h = 1, deg s < deg h, deg t < deg g; error if not coprime."""
    p = g.modulus
    r0, r1 = g._np(), h._np()
    s0, s1 = _one(p), r0[:0]
    t0, t1 = r0[:0], _one(p)
    while len(r1):
        q, r = _divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _sub(s0, _mul(q, s1, p), p)
        t0, t1 = t1, _sub(t0, _mul(q, t1, p), p)
    if len(r0) != 1:
        raise ValueError("not coprime")
    inv = pow(int(r0[0]), -1, p)
    return ModPolynomial._wrap(s0 * inv % p, p), ModPolynomial._wrap(t0 * inv % p, p)
