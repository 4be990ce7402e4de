from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion6.polyring import (
    IntegerPolynomial,
    ModPolynomial,
    QuadraticFieldElement,
    RationalPolynomial,
    factor_mod_p,
    full_factor,
    low_degree_factors,
    poly_gcd,
    rational_roots,
    splitting_degree_exceeds,
)
from torsion6.polyring.factor import FACTOR_LIST, NO_FACTOR_BELOW, FactorCertificate

X = sympy.Symbol("x")

small_poly = st.lists(st.integers(-12, 12), min_size=2, max_size=5).filter(lambda c: c[-1] != 0)


def _prod(fs):
    out = IntegerPolynomial([1])
    for f in fs:
        out = out * f
    return out


@settings(max_examples=40, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=3))
def test_full_factor_product(parts):
    f = _prod(IntegerPolynomial(c) for c in parts)
    fs = full_factor(f)
    prod = _prod(fs)
    pp = f.primitive_part()
    assert prod == pp or prod == IntegerPolynomial([-c for c in pp.coefficients])


@settings(max_examples=25, deadline=None)
@given(st.lists(small_poly, min_size=1, max_size=3))
def test_full_factor_against_sympy(parts):
    f = _prod(IntegerPolynomial(c) for c in parts)
    ours = sorted(g.degree for g in full_factor(f) if g.degree > 0)
    sp = sympy.factor_list(sympy.Poly(list(reversed(f.coefficients)), X))
    theirs = sorted(g.degree() for g, e in sp[1] for _ in range(e))
    assert ours == theirs


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=6), min_size=1, max_size=4),
       st.integers(1, 5))
def test_rational_roots(roots, scale):
    f = RationalPolynomial([scale])
    for r in roots:
        f = f * RationalPolynomial([-r, 1])
    f = f * RationalPolynomial([1, 0, 1])
    assert rational_roots(f) == set(roots)


def test_rational_roots_vs_sympy():
    f = RationalPolynomial([Fraction(-35937, 4), 0, 0, 1, 0, 0, -4])
    expected = {Fraction(str(r)) for r in sympy.Poly([-4, 0, 0, 1, 0, 0, Fraction(-35937, 4)], X).ground_roots()}
    assert rational_roots(f) == expected


def test_gcd_and_identity():
    a = RationalPolynomial([1, 1])
    b = RationalPolynomial([-2, 0, 1])
    g = poly_gcd(a * b, a * RationalPolynomial([3, 1]))
    assert g.monic() == a.monic()
    q, r = divmod(a * b, b)
    assert r.is_zero() and q == a


def test_factor_mod_p_matches_sympy():
    f = [3, 0, -5, 1, 1, 7, 1]
    for p in (5, 7, 11, 101):
        ours = sorted(g.degree for g, e in factor_mod_p(ModPolynomial(f, p)) for _ in range(e))
        sp = sympy.factor_list(sympy.Poly(list(reversed(f)), X, modulus=p))
        theirs = sorted(g.degree() for g, e in sp[1] for _ in range(e))
        assert ours == theirs


@pytest.mark.parametrize("d,r,s", [(-3, 1, 2), (2, Fraction(1, 3), -1), (5, 0, 4)])
def test_quadratic_sqrt(d, r, s):
    z = QuadraticFieldElement(d, r, s)
    w = (z * z).sqrt()
    assert w is not None and w * w == z * z
    assert z.norm() == z.r**2 - d * z.s**2


def test_quadratic_nonsquare():
    assert QuadraticFieldElement(-3, 2, 0).sqrt() is None
    assert QuadraticFieldElement(-3, -3, 0).sqrt() is not None  # -3 = (sqrt -3)^2
    with pytest.raises(ValueError):
        QuadraticFieldElement(4, 1, 1)


def test_low_degree_certificate_on_irreducible():
    # x^12 + x + 1 is irreducible; no factor of degree <= 4
    f = IntegerPolynomial([1, 1] + [0] * 10 + [1])
    cert = low_degree_factors(f, 4)
    assert cert.kind == NO_FACTOR_BELOW
    assert FactorCertificate.from_dict(cert.to_dict()).to_dict() == cert.to_dict()


def test_low_degree_factor_list():
    g1 = IntegerPolynomial([1, 1, 0, 1])       # x^3 + x + 1
    g2 = IntegerPolynomial([2, -1, 0, 0, 0, 1])  # irreducible quintic
    g3 = IntegerPolynomial([1] + [0] * 8 + [1, 1])  # degree 10
    cert = low_degree_factors(g1 * g2 * g3, 6)
    assert cert.kind == FACTOR_LIST
    assert sorted(g.degree for g in cert.factors) == [3, 5]


def test_splitting_witness():
    # x^3 - 2 has S3 closure; some prime gives degrees {1, 2}
    assert splitting_degree_exceeds(IntegerPolynomial([-2, 0, 0, 1])) is not None
    # cyclic cubic: every unramified prime splits completely or stays inert
    assert splitting_degree_exceeds(IntegerPolynomial([1, -2, -1, 1])) is None


def test_zero_and_bad_bound():
    with pytest.raises(ValueError):
        low_degree_factors(IntegerPolynomial([]), 3)
    with pytest.raises(ValueError):
        low_degree_factors(IntegerPolynomial([1, 1]), 0)
