"""Division polynomials in the x-only normalization.

h_n = psi_n for odd n and psi_n / (2y) for even n, both polynomials in x.
Everything is computed over Z on an integral model and transported back,
because rational arithmetic at degree ~1700 is hopeless while Kronecker
products of integer polynomials are fast.

With F = x^3 + a x + b:
  h_{2m+1} = 16 F^2 h_{m+2} h_m^3 - h_{m-1} h_{m+1}^3      (m even)
  h_{2m+1} = h_{m+2} h_m^3 - 16 F^2 h_{m-1} h_{m+1}^3      (m odd)
  h_{2m}   = h_m (h_{m+2} h_{m-1}^2 - h_{m-2} h_{m+1}^2)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..polyring import _zx
from ..polyring.integer import IntegerPolynomial
from ..polyring.rational import RationalPolynomial
from .curve import EllipticCurveQ


class DivisionConventionError(ArithmeticError):
    pass


def prime_divisors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def primitive_degree(n: int) -> int:
    """Degree of f_n: half the number of exact-order-n elements of (Z/n)^2 (3 for n = 2)."""
    if n == 2:
        return 3
    if n == 1:
        return 0
    c = n * n
    for p in prime_divisors(n):
        c = c * (p * p - 1) // (p * p)
    return c // 2


class IntegralDivisionPolynomials:
    """Memoized h_n and f_n over Z for integers a, b."""

    def __init__(self, a: int, b: int):
        self.a, self.b = int(a), int(b)
        a, b = self.a, self.b
        self.F = [b, a, 0, 1]
        self._F2_16 = _zx.scale(_zx.mul(self.F, self.F), 16)
        self._h = {
            0: [],
            1: [1],
            2: [1],
            3: [-a * a, 12 * b, 6 * a, 0, 3],
            4: _zx.scale([-8 * b * b - a**3, -4 * a * b, -5 * a * a, 20 * b, 5 * a, 0, 1], 2),
        }
        self._f: dict[int, list[int]] = {1: [1], 2: list(self.F)}

    def h(self, n: int) -> list[int]:
        if n < 0:
            return _zx.neg(self.h(-n))
        hit = self._h.get(n)
        if hit is not None:
            return hit
        m = n // 2
        mul = _zx.mul
        if n % 2:
            t1 = mul(self.h(m + 2), _cube(self.h(m)))
            t2 = mul(self.h(m - 1), _cube(self.h(m + 1)))
            if m % 2 == 0:
                t1 = mul(t1, self._F2_16)
            else:
                t2 = mul(t2, self._F2_16)
            r = _zx.sub(t1, t2)
        else:
            hm1 = self.h(m - 1)
            hp1 = self.h(m + 1)
            inner = _zx.sub(
                mul(self.h(m + 2), mul(hm1, hm1)), mul(self.h(m - 2), mul(hp1, hp1))
            )
            r = mul(self.h(m), inner)
        self._h[n] = r
        return r

    def big_psi(self, n: int) -> list[int]:
        """h_n for odd n, h_n * F for even n: roots are all nonzero n-torsion x's."""
        return self.h(n) if n % 2 else _zx.mul(self.h(n), self.F)

    def primitive_int(self, n: int) -> list[int]:
        """A primitive integer polynomial proportional to f_n."""
        hit = self._f.get(n)
        if hit is not None:
            return hit
        num = _zx.primitive(self.big_psi(n))
        den = [1]
        for d in range(2, n):
            if n % d == 0:
                den = _zx.mul(den, self.primitive_int(d))
        q = _zx.exact_quotient(num, _zx.primitive(den))
        if q is None:
            raise DivisionConventionError("division convention violated at n = %d" % n)
        q = _zx.primitive(q)
        self._f[n] = q
        return q

    def primitive_leading(self, n: int) -> Fraction:
        """Leading coefficient of f_n = big_psi_n / prod f_d (f_2 = F is monic)."""
        if n == 1:
            return Fraction(1)
        lead = Fraction(n if n % 2 else n // 2)
        for d in range(2, n):
            if n % d == 0:
                lead /= self.primitive_leading(d)
        return lead


@lru_cache(maxsize=64)
def _engine(a: int, b: int) -> IntegralDivisionPolynomials:
    return IntegralDivisionPolynomials(a, b)


def _cube(p):
    return _zx.mul(p, _zx.mul(p, p))


def _rescale(cs: list[int], u: int, shift_exp: int) -> RationalPolynomial:
    """x -> u^2 x then divide by u^shift_exp, returned over Q."""
    u2 = u * u
    out = []
    pw = 1
    for c in cs:
        out.append(Fraction(c * pw, u**shift_exp) if shift_exp >= 0 else Fraction(c * pw * u ** (-shift_exp)))
        pw *= u2
    return RationalPolynomial(out)


def division_poly(E: EllipticCurveQ, n: int) -> RationalPolynomial:
    """x-only division polynomial h_n of E."""
    if n < 1:
        raise ValueError("n must be at least 1")
    model, u = E.integral_model()
    h = _engine(int(model.a), int(model.b)).h(n)
    e = n * n - 1 if n % 2 else n * n - 4
    return _rescale(h, u, e)


def primitive_division_poly(E: EllipticCurveQ, n: int) -> RationalPolynomial:
    """f_n of E, whose roots are the x-coordinates of points of exact order n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    model, u = E.integral_model()
    eng = _engine(int(model.a), int(model.b))
    prim = eng.primitive_int(n)
    lead = eng.primitive_leading(n)
    f = RationalPolynomial([Fraction(c) * lead / prim[-1] for c in prim])
    if u == 1:
        return f
    # f_n^E(x) is proportional to f_n^{model}(u^2 x); fix the scalar by the lead
    g = _rescale(prim, u, 0)
    return g * (lead / g.leading())


def primitive_division_poly_integral(E: EllipticCurveQ, n: int) -> tuple[IntegerPolynomial, Fraction]:
    """(F, d): a primitive integer f_n of the twist-minimal integral model of E.

    The roots of F are d times the roots of f_n of E, so F and f_n have
    the same factorization pattern over Q and the same splitting field.
    """
    A, B, d = E.twist_minimal_integral()
    return IntegerPolynomial(_engine(A, B).primitive_int(n)), d
