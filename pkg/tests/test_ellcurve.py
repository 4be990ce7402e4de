from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion6.ellcurve import (
    EllipticCurveQ,
    all_rational_points_rank0,
    curve_from_j,
    division_poly,
    primitive_degree,
    primitive_division_poly,
    primitive_division_poly_integral,
    quadratic_twist,
    rank0_certificate_via_2isogeny,
    torsion_via_lutz_nagell,
)


def _modp_points(a, b, p):
    roots = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    return [(x, y) for x in range(p) for y in roots.get((x**3 + a * x + b) % p, [])]


def _add(P, Q, a, p):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return x3, (lam * (x1 - x3) - y1) % p


def _order(P, a, p):
    k, Q = 1, P
    while Q is not None:
        Q = _add(Q, P, a, p)
        k += 1
    return k


@settings(max_examples=12, deadline=None)
@given(st.integers(-9, 9), st.integers(-9, 9), st.sampled_from([53, 61, 67, 71]))
def test_primitive_divpoly_vs_point_orders(a, b, p):
    if (4 * a**3 + 27 * b**2) % p == 0:
        return
    E = EllipticCurveQ(a, b)
    pts = _modp_points(a, b, p)
    for n in range(2, 13):
        f = primitive_division_poly(E, n)
        assert f.degree == primitive_degree(n)
        cs = [c.numerator * pow(c.denominator, -1, p) % p for c in f.coefficients]
        for x, y in pts:
            val = sum(c * pow(x, i, p) for i, c in enumerate(cs)) % p
            assert (val == 0) == (_order((x, y), a, p) == n), (a, b, p, n, x)


def test_psi_small():
    E = EllipticCurveQ(0, 1)
    assert list(division_poly(E, 3).coefficients) == [Fraction(c) for c in (0, 12, 0, 0, 3)]
    assert [primitive_degree(n) for n in (2, 3, 4, 5, 6, 30)] == [3, 4, 6, 12, 12, 288]


def test_integral_model_scaling():
    E = curve_from_j(Fraction(-121945, 32))
    assert E.j == Fraction(-121945, 32)
    f, lc = primitive_division_poly_integral(E, 6)
    assert f.degree == 12
    A, B, d = E.twist_minimal_integral()
    assert EllipticCurveQ(A, B).j == E.j


@pytest.mark.parametrize("j", [Fraction(0), Fraction(1728), Fraction(-3375), Fraction(46969655, 32768)])
def test_curve_from_j(j):
    E = curve_from_j(j)
    assert E.j == j
    assert quadratic_twist(E, -3).j == j


@pytest.mark.parametrize("a,b,label", [
    (0, 1, "C6"),
    (-1, 0, "C2 x C2"),
    (-43, 166, "C7"),
    (0, -432, "C3"),
    (-219, 1654, "C9"),
    (1, 1, "C1"),
])
def test_lutz_nagell(a, b, label):
    T = torsion_via_lutz_nagell(EllipticCurveQ(a, b))
    assert T.label() == label
    keys = {P.key() for P in T.points}
    assert all((P + Q).key() in keys for P in T.points for Q in T.points)
    assert all((P * T.order).is_infinity for P in T.points)


def test_descent_rank_zero_points():
    tors, cert = all_rational_points_rank0(EllipticCurveQ(0, 27))
    assert cert.rank_bound == 0
    assert sorted(str(P) for P in tors.points) == ["(-3, 0)", "O"]


def test_descent_guard_on_positive_rank():
    # y^2 = x^3 - 25x has rank 1 (congruent number 5)
    E = EllipticCurveQ(-25, 0)
    assert rank0_certificate_via_2isogeny(E).rank_bound >= 1
    with pytest.raises(ValueError):
        all_rational_points_rank0(E)
    P = E.point(-4, 6)
    assert P.order() is None


def test_non_integral_model_points():
    E = EllipticCurveQ(Fraction(0), Fraction(27, 64))
    tors, cert = all_rational_points_rank0(E)
    assert all(P.is_infinity or E.contains(P.x, P.y) for P in tors.points)
    assert len(tors.points) == 2


def test_singular_rejected():
    with pytest.raises(ValueError):
        EllipticCurveQ(-3, 2)
