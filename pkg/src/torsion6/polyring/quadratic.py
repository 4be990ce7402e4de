"""Elements of quadratic fields Q(sqrt d)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .primes import squarefree_part


def _is_rational_square(q: Fraction) -> bool:
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def rational_sqrt(q: Fraction) -> Fraction | None:
    if not _is_rational_square(q):
        return None
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


class QuadraticFieldElement:
    """r + s*sqrt(d) with r, s rational and d squarefree, d != 0, 1."""

    __slots__ = ("d", "r", "s")

    def __init__(self, d: int, r=0, s=0):
        if d in (0, 1) or squarefree_part(d) != d:
            raise ValueError("d must be squarefree and not 0 or 1, got %d" % d)
        self.d = d
        self.r = Fraction(r)
        self.s = Fraction(s)

    def _lift(self, other):
        if isinstance(other, QuadraticFieldElement):
            if other.d != self.d:
                raise ValueError("different quadratic fields")
            return other
        return QuadraticFieldElement(self.d, other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return QuadraticFieldElement(self.d, self.r + o.r, self.s + o.s)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticFieldElement(self.d, -self.r, -self.s)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadraticFieldElement(
            self.d, self.r * o.r + self.d * self.s * o.s, self.r * o.s + self.s * o.r
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadraticFieldElement(self.d, self.r, -self.s)

    def norm(self) -> Fraction:
        return self.r * self.r - self.d * self.s * self.s

    def trace(self) -> Fraction:
        return 2 * self.r

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadraticFieldElement(self.d, self.r / n, -self.s / n)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = QuadraticFieldElement(self.d, 1, 0)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.s == 0 and self.r == other
        if not isinstance(other, QuadraticFieldElement):
            return NotImplemented
        return (self.d, self.r, self.s) == (other.d, other.r, other.s)

    def __hash__(self):
        return hash((self.d, self.r, self.s))

    def is_zero(self) -> bool:
        return self.r == 0 and self.s == 0

    def is_rational(self) -> bool:
        return self.s == 0

    def sqrt(self) -> "QuadraticFieldElement | None":
        """A square root inside the same field, or None if self is not a square."""
        if self.is_zero():
            return self
        if self.s == 0:
            q = rational_sqrt(self.r)
            if q is not None:
                return QuadraticFieldElement(self.d, q, 0)
            # r = d * t^2 gives sqrt = t*sqrt(d)
            t = rational_sqrt(self.r / self.d)
            if t is not None:
                return QuadraticFieldElement(self.d, 0, t)
            return None
        # (u + v sqrt d)^2 = r + s sqrt d  =>  u^2 = (r +- sqrt(N)) / 2
        n = rational_sqrt(self.norm())
        if n is None:
            return None
        for u2 in ((self.r + n) / 2, (self.r - n) / 2):
            u = rational_sqrt(u2)
            if u is not None and u != 0:
                v = self.s / (2 * u)
                cand = QuadraticFieldElement(self.d, u, v)
                if cand * cand == self:
                    return cand
        return None

    def is_square(self) -> bool:
        return self.sqrt() is not None

    def __repr__(self):
        return "(%s + %s*sqrt(%d))" % (self.r, self.s, self.d)
