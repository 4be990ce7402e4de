"""Exact polynomial arithmetic and factorization over Q, Z, Z/p^k and Q(sqrt d)."""

from .factor import (
    FactorCertificate,
    full_factor,
    low_degree_factors,
    splitting_certificate,
    splitting_degree_exceeds,
)
from .hensel import hensel_lift
from .integer import IntegerPolynomial, squarefree_part
from .modp import ModPolynomial, factor_mod_p, is_irreducible_mod_p
from .quadratic import QuadraticFieldElement
from .rational import RationalPolynomial, poly_gcd, poly_identity_check, rational_roots

__all__ = [
    "FactorCertificate",
    "IntegerPolynomial",
    "ModPolynomial",
    "QuadraticFieldElement",
    "RationalPolynomial",
    "factor_mod_p",
    "full_factor",
    "hensel_lift",
    "is_irreducible_mod_p",
    "low_degree_factors",
    "poly_gcd",
    "poly_identity_check",
    "rational_roots",
    "splitting_certificate",
    "splitting_degree_exceeds",
    "squarefree_part",
]
