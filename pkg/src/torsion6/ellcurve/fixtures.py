"""The specific curves the torsion arguments need, with provenance."""

from __future__ import annotations

from dataclasses import dataclass

from .curve import EllipticCurveQ


@dataclass(frozen=True)
class CurveFixture:
    key: str
    curve: EllipticCurveQ
    provenance: str


FIXTURES = {
    f.key: f
    for f in (
        CurveFixture(
            "x3+27",
            EllipticCurveQ(0, 27),
            "LMFDB 144.a4 up to isomorphism; end of the 3Cs discriminant chain t2^3 + 27 = beta2^2",
        ),
        CurveFixture(
            "x3-27",
            EllipticCurveQ(0, -27),
            "y^2 = t^3 - 27 with y rational (first half of the Q(zeta3) case split)",
        ),
        CurveFixture(
            "x3+729",
            EllipticCurveQ(0, 729),
            "(-3)-twist of y^2 = x^3 - 27 (y = c*sqrt(-3) half of the case split)",
        ),
        CurveFixture(
            "x3-1728",
            EllipticCurveQ(0, -1728),
            "birational model Y^2 = X^3 - 1728 of y^3 = x^2 + 1728 (LMFDB 36.a3 per the source)",
        ),
    )
}


def fixture(key: str) -> EllipticCurveQ:
    return FIXTURES[key].curve
