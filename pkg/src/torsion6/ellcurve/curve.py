"""Short Weierstrass curves y^2 = x^3 + a x + b over Q and their points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..polyring.primes import factorint, squarefree_part

Rat = Union[int, Fraction]


def _q(x) -> Fraction:
    if isinstance(x, (list, tuple)):
        return Fraction(int(x[0]), int(x[1]))
    return Fraction(x)


def _qjson(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


@dataclass(frozen=True)
class EllipticCurveQ:
    a: Fraction
    b: Fraction

    def __init__(self, a: Rat, b: Rat):
        a, b = _q(a), _q(b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if 4 * a**3 + 27 * b**2 == 0:
            raise ValueError("singular curve: 4a^3 + 27b^2 = 0")

    @property
    def discriminant(self) -> Fraction:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    @property
    def j(self) -> Fraction:
        return 1728 * 4 * self.a**3 / (4 * self.a**3 + 27 * self.b**2)

    def rhs(self, x: Rat) -> Fraction:
        return x**3 + self.a * x + self.b

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def contains(self, x: Rat, y: Rat) -> bool:
        return Fraction(y) ** 2 == self.rhs(Fraction(x))

    def point(self, x: Rat, y: Rat) -> "AffinePointQ":
        return AffinePointQ(self, x, y)

    @property
    def infinity(self) -> "AffinePointQ":
        return AffinePointQ(self, None, None)

    def scaled(self, u: Rat) -> "EllipticCurveQ":
        """The isomorphic model (u^4 a, u^6 b), via (x, y) -> (u^2 x, u^3 y)."""
        u = _q(u)
        return EllipticCurveQ(u**4 * self.a, u**6 * self.b)

    def integral_scale(self) -> int:
        """Least positive integer u with u^4 a, u^6 b integral."""
        u = 1
        for p, e in factorint(self.a.denominator * self.b.denominator).items():
            va = _val(self.a.denominator, p)
            vb = _val(self.b.denominator, p)
            k = max(-(-va // 4), -(-vb // 6))
            u *= p**k
        return u

    def integral_model(self) -> tuple["EllipticCurveQ", int]:
        u = self.integral_scale()
        return self.scaled(u), u

    def twist_minimal_integral(self) -> tuple[int, int, Fraction]:
        """Integers (A, B) = (d^2 a, d^3 b) for a rational d with the smallest
        possible prime powers; returns (A, B, d).

        Quadratic twisting multiplies x-coordinates of torsion points by d, so
        Galois-theoretic data of division polynomials are unchanged.
        """
        a, b = self.a, self.b
        d = Fraction(1)
        primes = set()
        for n in (a.numerator, a.denominator, b.numerator, b.denominator):
            if n not in (0, 1, -1):
                primes |= set(factorint(n))
        for p in sorted(primes):
            va = _vq(a, p)
            vb = _vq(b, p)
            # largest m (possibly negative) keeping 2m + va, 3m + vb >= 0
            cands = []
            if va is not None:
                cands.append(-(va // 2))
            if vb is not None:
                cands.append(-(vb // 3))
            m = max(cands)
            d *= Fraction(p) ** m
        A = d**2 * a
        B = d**3 * b
        assert A.denominator == 1 and B.denominator == 1
        return int(A), int(B), d

    def to_json(self) -> dict:
        return {
            "a": _qjson(self.a),
            "b": _qjson(self.b),
            "delta": _qjson(self.discriminant),
            "j": _qjson(self.j),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EllipticCurveQ":
        return cls(_q(data["a"]), _q(data["b"]))

    def __str__(self):
        return "y^2 = x^3 + (%s)*x + (%s)" % (self.a, self.b)


def _val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vq(x: Fraction, p: int):
    if x == 0:
        return None
    return _val(x.numerator, p) - _val(x.denominator, p)


@dataclass(frozen=True)
class AffinePointQ:
    """A rational point; x = y = None is the point at infinity."""

    curve: EllipticCurveQ
    x: Fraction | None
    y: Fraction | None

    def __init__(self, curve: EllipticCurveQ, x, y):
        object.__setattr__(self, "curve", curve)
        if x is None:
            object.__setattr__(self, "x", None)
            object.__setattr__(self, "y", None)
            return
        x, y = _q(x), _q(y)
        if y * y != curve.rhs(x):
            raise ValueError("point (%s, %s) not on %s" % (x, y, curve))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self):
        if self.is_infinity:
            return self
        return AffinePointQ(self.curve, self.x, -self.y)

    def __add__(self, other: "AffinePointQ") -> "AffinePointQ":
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        if self.x == other.x:
            if self.y == -other.y:
                return self.curve.infinity
            lam = (3 * self.x**2 + self.curve.a) / (2 * self.y)
        else:
            lam = (other.y - self.y) / (other.x - self.x)
        x3 = lam * lam - self.x - other.x
        y3 = lam * (self.x - x3) - self.y
        return AffinePointQ(self.curve, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int) -> "AffinePointQ":
        if n < 0:
            return (-self) * (-n)
        result = self.curve.infinity
        base = self
        while n:
            if n & 1:
                result = result + base
            n >>= 1
            if n:
                base = base + base
        return result

    __rmul__ = __mul__

    def order(self, limit: int = 12) -> int | None:
        """Exact order if at most limit, else None."""
        q = self
        for k in range(1, limit + 1):
            if q.is_infinity:
                return k
            q = q + self
            if k == limit:
                break
        return None

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": _qjson(self.x), "y": _qjson(self.y)}

    def key(self):
        return (0,) if self.is_infinity else (1, self.x, self.y)

    def __str__(self):
        return "O" if self.is_infinity else "(%s, %s)" % (self.x, self.y)


def curve_from_j(j: Rat) -> EllipticCurveQ:
    """A curve with the given j-invariant."""
    j = _q(j)
    if j == 0:
        return EllipticCurveQ(0, 1)
    if j == 1728:
        return EllipticCurveQ(1, 0)
    return EllipticCurveQ(3 * j * (1728 - j), 2 * j * (1728 - j) ** 2)


def quadratic_twist(E: EllipticCurveQ, d: int) -> EllipticCurveQ:
    """The twist (d^2 a, d^3 b) by squarefree d."""
    if d == 0 or squarefree_part(d) != d:
        raise ValueError("twist parameter must be a nonzero squarefree integer")
    return EllipticCurveQ(d * d * E.a, d**3 * E.b)
