"""Elliptic curves over Q: models, division polynomials, torsion and descent."""

from .curve import AffinePointQ, EllipticCurveQ, curve_from_j, quadratic_twist
from .descent import DescentCertificate, all_rational_points_rank0, rank0_certificate_via_2isogeny
from .divpoly import (
    division_poly,
    primitive_degree,
    primitive_division_poly,
    primitive_division_poly_integral,
)
from .torsion import TorsionResult, torsion_via_lutz_nagell

__all__ = [
    "AffinePointQ",
    "DescentCertificate",
    "EllipticCurveQ",
    "TorsionResult",
    "all_rational_points_rank0",
    "curve_from_j",
    "division_poly",
    "primitive_degree",
    "primitive_division_poly",
    "primitive_division_poly_integral",
    "quadratic_twist",
    "rank0_certificate_via_2isogeny",
    "torsion_via_lutz_nagell",
]
