"""Rational torsion by Lutz-Nagell."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..polyring.primes import factorint
from ..polyring.rational import RationalPolynomial, rational_roots
from .curve import AffinePointQ, EllipticCurveQ

# Mazur: a rational torsion point has order at most 12
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class TorsionResult:
    points: tuple[AffinePointQ, ...]
    structure: tuple[int, ...]  # (m,) for C_m, (2, 2m) for C_2 x C_2m

    @property
    def order(self) -> int:
        return len(self.points)

    def label(self) -> str:
        if len(self.structure) == 1:
            return "C%d" % self.structure[0]
        return "C%d x C%d" % self.structure

    def to_json(self) -> dict:
        return {
            "points": [P.to_json() for P in self.points],
            "structure": list(self.structure),
            "label": self.label(),
        }


def _square_divisors(n: int) -> list[int]:
    """Nonnegative y with y^2 | n (n nonzero)."""
    ys = [1]
    for p, e in factorint(n).items():
        ys = [y * p**k for y in ys for k in range(e // 2 + 1)]
    return sorted(ys)


def _integer_roots(cs: list[int]) -> list[int]:
    return sorted(int(r) for r in rational_roots(RationalPolynomial(cs)) if r.denominator == 1)


def _is_torsion(P: AffinePointQ) -> bool:
    Q = P
    for _ in range(MAX_TORSION_ORDER):
        if Q.is_infinity:
            return True
        # Lutz-Nagell: multiples of a torsion point stay integral
        if Q.x.denominator != 1 or Q.y.denominator != 1:
            return False
        Q = Q + P
    return Q.is_infinity


def torsion_via_lutz_nagell(E: EllipticCurveQ) -> TorsionResult:
    if not E.is_integral():
        raise ValueError("Lutz-Nagell needs an integral model")
    a, b = int(E.a), int(E.b)
    D = 4 * a**3 + 27 * b * b
    cands: set[tuple[int, int]] = set()
    for x in _integer_roots([b, a, 0, 1]):
        cands.add((x, 0))
    for y in _square_divisors(D):
        for x in _integer_roots([b - y * y, a, 0, 1]):
            cands.add((x, y))
            cands.add((x, -y))
    pts = [E.infinity]
    for x, y in sorted(cands):
        P = E.point(x, y)
        if _is_torsion(P):
            pts.append(P)
    pts.sort(key=lambda P: P.key())
    n = len(pts)
    two = sum(1 for P in pts if not P.is_infinity and P.y == 0)
    structure = (2, n // 2) if two == 3 else (n,)
    return TorsionResult(tuple(pts), structure)


def is_closed_under_group_law(points) -> bool:
    keys = {P.key() for P in points}
    for P in points:
        if (-P).key() not in keys:
            return False
        for Q in points:
            if (P + Q).key() not in keys:
                return False
    return True


def integer_sqrt_or_none(n: int):
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def rational_points_search(E: EllipticCurveQ, height: int) -> list[AffinePointQ]:
    """Points with x = m/e^2, |m|, e^2 <= height (naive search)."""
    out = []
    for e in range(1, isqrt(height) + 1):
        e2 = e * e
        for m in range(-height, height + 1):
            x = Fraction(m, e2)
            if x.denominator != e2:
                continue
            r = E.rhs(x)
            if r < 0:
                continue
            ny = integer_sqrt_or_none(r.numerator)
            dy = integer_sqrt_or_none(r.denominator)
            if ny is None or dy is None:
                continue
            out.append(E.point(x, Fraction(ny, dy)))
    return out
