"""Exclusions that come down to polynomial identities and rational points."""

from __future__ import annotations

from fractions import Fraction

from ..ellcurve import EllipticCurveQ, all_rational_points_rank0, curve_from_j, primitive_division_poly_integral
from ..gl2group.abstract import all_subgroups, symmetric
from ..knowledgebase import TorsionGroupId, default_kb
from ..polyring import QuadraticFieldElement, RationalPolynomial, full_factor, poly_identity_check, rational_roots
from ..polyring.primes import squarefree_part
from .verdict import CITED_FACT, EXCLUDED, INCONCLUSIVE, ExclusionVerdict

T = RationalPolynomial.x()


def _pt(P) -> str:
    return "O" if P.is_infinity else "(%s, %s)" % (P.x, P.y)


def rational_points(a, b) -> dict:
    """Complete point list of y^2 = x^3 + a x + b, with its rank-0 certificate."""
    E = EllipticCurveQ(a, b)
    tors, cert = all_rational_points_rank0(E)
    return {
        "curve": "y^2 = x^3 + (%s)x + (%s)" % (a, b),
        "rank_bound": cert.rank_bound,
        "points": sorted((P for P in tors.points), key=lambda P: (not P.is_infinity, P.x if not P.is_infinity else 0, P.y if not P.is_infinity else 0)),
        "descent": cert.to_json(),
    }


def _points_json(d: dict) -> dict:
    out = dict(d)
    out["points"] = [_pt(P) for P in d["points"]]
    return out


# -- identities --------------------------------------------------------------------


def et_identities(kb=None) -> dict:
    """j and discriminant of the nine-isogeny family E_t."""
    kb = kb or default_kb()
    a, b = kb.family_polys("nine-isogeny-Et")
    disc4 = a**3 * 4 + b**2 * 27
    t3 = T**3
    delta_ok = poly_identity_check(disc4 * (-16), (t3 - 27) * (2**12 * 3**6))
    # j = 1728 * 4a^3 / (4a^3 + 27b^2), cleared of denominators
    j_ok = poly_identity_check(a**3 * (1728 * 4) * (t3 - 27), t3 * (t3 - 24) ** 3 * disc4)
    return {"delta_identity": delta_ok, "j_identity": j_ok,
            "delta": "2^12*3^6*(t^3-27)", "j": "t^3(t^3-24)^3/(t^3-27)"}


def threecs_chain() -> dict:
    """Substitution identities behind the 3Cs discriminant argument."""
    kb = default_kb()
    a, b = kb.family_polys("threeCs-family")
    disc4 = a**3 * 4 + b**2 * 27
    cubic = T * (T**2 + T * 3 + 3)
    true_identity = poly_identity_check(disc4, cubic**3 * (-6912))
    stated_identity = poly_identity_check(disc4, cubic**3)
    # t = -t1/3:  t(t^2+3t+3) = -t1(t1^2-9t1+27)/27
    t1 = T
    c1 = t1 * (t1**2 - t1 * 9 + 27)
    sub1 = poly_identity_check(cubic.compose(t1 * Fraction(-1, 3)) * (-27), c1)
    # t1 = t2 + 3:  t1(t1^2-9t1+27) = t2^3 + 27
    sub2 = poly_identity_check(c1.compose(T + 3), T**3 + 27)
    as_stated = rational_points(0, 27)
    corrected = rational_points(0, 729)
    # corrected: -t(t^2+3t+3) = s^2  <=>  3(t2^3+27) = (3s')^2  <=>  Y^2 = X^3+729, X = 3 t2
    pulled = []
    for P in corrected["points"]:
        if P.is_infinity:
            continue
        t2 = P.x / 3
        t = -(t2 + 3) / 3
        pulled.append({"point": _pt(P), "t": str(t), "a(t)": str(a(t)), "singular": disc4(t) == 0})
    return {
        "discriminant_identity_exact": "4a^3+27b^2 = -6912*(t(t^2+3t+3))^3",
        "discriminant_identity_exact_holds": true_identity,
        "discriminant_identity_as_stated_holds": stated_identity,
        "substitution_t1": {"map": "t1 = -3t, beta1 = 3^5 beta", "identity": sub1},
        "substitution_t2": {"map": "t2 = t1 - 3, beta2 = beta1 / (t2^3+27)", "identity": sub2},
        "chain_as_stated": {
            "curve_points": _points_json(as_stated),
            "conclusion": "only (-3, 0): beta2 = 0, so beta = 0 and the discriminant -3 beta^2 vanishes",
        },
        "chain_corrected": {
            "condition": "-t(t^2+3t+3) is a nonzero square, i.e. 3(t2^3+27) is a square",
            "curve_points": _points_json(corrected),
            "pullback": pulled,
            "conclusion": "every solution is singular (t = 0) or has a(t) = 0, i.e. j = 0 (CM)",
        },
    }


# -- C3 x C18 ------------------------------------------------------------------------


def et_twist_points(kb=None) -> dict:
    """y^2 = t^3 - 27 with y in Q(sqrt-3): y rational, or y = c*sqrt(-3) and then
    (-3t)^3 + 729 = (9c)^2."""
    kb = kb or default_kb()
    rat = rational_points(0, -27)
    tw = rational_points(0, 729)
    ts = set()
    rows = []
    for P in rat["points"]:
        if not P.is_infinity:
            ts.add(P.x)
            rows.append({"curve": "y^2 = x^3 - 27", "point": _pt(P), "t": str(P.x)})
    for P in tw["points"]:
        if not P.is_infinity:
            t = -P.x / 3
            ts.add(t)
            rows.append({"curve": "Y^2 = X^3 + 729", "point": _pt(P), "t": str(t)})
    excluded_t = {Fraction(3)} | set(kb.family_cm_values("nine-isogeny-Et"))
    return {
        "case_split_lemma": "if y = u + v sqrt(-3) and y^2 is rational then uv = 0, so y is rational or y = v sqrt(-3)",
        "rational_case": _points_json(rat),
        "twist_case": _points_json(tw),
        "change_of_variables": "X = -3t, Y = 9c",
        "pullback": rows,
        "t_values": sorted(str(t) for t in ts),
        "all_in_excluded_set": ts <= excluded_t,
    }


def two_cn_three_ns(kb=None) -> dict:
    """x^2 + 1728 = y^3, i.e. Y^2 = X^3 - 1728."""
    kb = kb or default_kb()
    pts = rational_points(0, -1728)
    js = set()
    for P in pts["points"]:
        if P.is_infinity:
            continue
        num, den = kb.jmap("3Ns")
        j1 = num(P.x) / den(P.x)
        num, den = kb.jmap("2Cn")
        j2 = num(P.y) / den(P.y)
        assert j1 == j2
        js.add(j1)
    return {"fiber_product": "Y^2 = X^3 - 1728", "curve_points": _points_json(pts),
            "j_values": sorted(str(j) for j in js), "all_cm": js <= {Fraction(1728)}}


def check_c3c18_main(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    i = et_identities(kb)
    ii = et_twist_points(kb)
    iii = threecs_chain()
    iv = two_cn_three_ns(kb)
    cited = [c for c in kb.cited_facts() if c["target"].startswith("3x18/")]
    non2b = (i["delta_identity"] and i["j_identity"] and ii["all_in_excluded_set"]
             and iii["discriminant_identity_exact_holds"] and iii["substitution_t1"]["identity"]
             and iii["substitution_t2"]["identity"] and iv["all_cm"])
    evidence = {
        "branches": {
            "GL2(F2) with rational 9-isogeny (E_t family)": {"identities": i, "points": ii},
            "3Cs.1.1 discriminant chain": iii,
            "2Cn with 3Ns": iv,
            "cited": cited,
        },
        "non_2B_branches_excluded": non2b,
        "open_branch": "mod-2 image 2B",
    }
    return ExclusionVerdict("C3xC18", ["C3xC18"], INCONCLUSIVE, evidence,
                            [c["citation"] for c in cited] + [kb.citation("family/nine-isogeny-Et"),
                                                              kb.citation("family/threeCs-family")],
                            scope="excluded away from the 2B case; the 2B case is open")


# -- C2 x C30 auxiliary branches -----------------------------------------------------


def check_c2c30_aux(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    js = kb.j_list("isogeny-15")
    below = {str(j): j < 1728 for j in js}
    iso30 = kb.isogeny_degree_allowed(30)
    ok = all(below.values()) and iso30.forbidden
    evidence = {
        "rational_2_torsion": {"argument": "rational 2-torsion and a 15-isogeny give a 30-isogeny",
                               "isogeny_30": iso30.to_json()},
        "2Cn": {"argument": "j = y^2 + 1728 has no real solution when j < 1728",
                "j_below_1728": below},
    }
    return ExclusionVerdict("C2xC30-aux", ["C2xC30"], EXCLUDED if ok else INCONCLUSIVE, evidence,
                            [kb.citation("isogeny-degrees"), kb.citation("j-list/isogeny-15"), kb.citation("jmap/2Cn")],
                            scope="mod-2 image 2B, 2Cs or 2Cn")


# -- C3 x C15 and C3 x C21 --------------------------------------------------------------


def _sqf_rational(q: Fraction) -> int:
    return squarefree_part(q.numerator * q.denominator)


def _twist_class(d: int) -> int:
    # over Q(sqrt-3), E^d and E^(-3d) are isomorphic
    return min(d, squarefree_part(-3 * d), key=lambda v: (abs(v), v))


def twist_classes_with_point(E: EllipticCurveQ, n: int) -> dict:
    """Squarefree d (up to d ~ -3d) such that E^d has a point of exact order n over Q(sqrt-3)."""
    # f_n is computed on the twist-minimal integral model; work there
    A, B, _ = E.twist_minimal_integral()
    E = EllipticCurveQ(A, B)
    f, _ = primitive_division_poly_integral(E, n)
    found: dict[int, list] = {}

    def add(d, x):
        found.setdefault(_twist_class(d), []).append(x)

    for g in full_factor(f):
        cs = [Fraction(c) for c in g.coefficients]
        if len(cs) == 2:
            x = -cs[0] / cs[1]
            r = E.rhs(x)
            if r == 0:
                continue  # order 2, never exact order n > 2
            for d in {_sqf_rational(r), squarefree_part(-3 * _sqf_rational(r))}:
                add(d, str(x))
        elif len(cs) == 3:
            c, b, a = cs
            D = b * b - 4 * a * c
            if _sqf_rational(D) != -3:
                continue
            s = (D / -3)
            from math import isqrt
            sn, sd = isqrt(s.numerator), isqrt(s.denominator)
            x = QuadraticFieldElement(-3, -b / (2 * a), Fraction(sn, sd) / (2 * a))
            r = x * x * x + x * E.a + E.b
            if r.is_rational():
                rq = Fraction(r.r)
                for d in {_sqf_rational(rq), squarefree_part(-3 * _sqf_rational(rq))}:
                    add(d, str(x))
                continue
            nr = r.norm()
            num, den = isqrt(nr.numerator), isqrt(nr.denominator)
            if nr < 0 or Fraction(num * num, den * den) != nr:
                continue
            root = Fraction(num, den)
            for cand in (r.trace() + 2 * root, r.trace() - 2 * root):
                if cand == 0:
                    continue
                d = _sqf_rational(Fraction(cand))
                if (r * d).is_square():
                    add(d, str(x))
    return found


def check_c3c15_c3c21(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    # C21 branch: a Galois cubic inside an S3 sextic would need a normal index-3 subgroup
    S3 = symmetric(3)
    idx3 = [H for H in all_subgroups(S3) if H.order == 2]
    normal = [H for H in idx3 if S3.is_normal(H)]
    phi2 = kb.torsion_table("phiQ2")
    c21_ok = not normal and TorsionGroupId(1, 21) not in phi2
    # C15 branch: order 3 and order 5 points over F = Q(sqrt-3) on a common twist
    rows = []
    c15_ok = True
    for j in kb.j_list("isogeny-15"):
        A, B, _ = curve_from_j(j).twist_minimal_integral()
        E = EllipticCurveQ(A, B)
        d3 = twist_classes_with_point(E, 3)
        d5 = twist_classes_with_point(E, 5)
        common = sorted(set(d3) & set(d5))
        c15_ok &= not common
        rows.append({"j": str(j), "model": E.to_json(), "twists_with_3_point": sorted(d3),
                     "twists_with_5_point": sorted(d5), "common": common})
    evidence = {
        "C3xC21": {
            "argument": "Q(P_7) is Galois of degree 1, 2 or 3 over Q inside the S3 field K; a cyclic cubic would be a normal index-3 subgroup",
            "index_3_subgroups_of_S3": len(idx3),
            "normal_ones": len(normal),
            "C21_in_quadratic_table": TorsionGroupId(1, 21) in phi2,
        },
        "C3xC15": {
            "field": "F = Q(sqrt(-3)), the unique quadratic subfield of the S3 field K = Q(E[3])",
            "method": "for every twist E^d, x-coordinates of n-torsion in F from factors of f_n of degree <= 2; "
                      "y in F tested by exact square roots in F",
            "curve_labels": kb.constant("c3c15-curves")["labels"],
            "curves": rows,
        },
    }
    if c21_ok and c15_ok:
        status, cites = EXCLUDED, [kb.citation("torsion/phiQ2"), kb.citation("c3c15-curves")]
    elif c21_ok:
        status, cites = CITED_FACT, [kb.citation("c3c15-curves")]
    else:
        status, cites = INCONCLUSIVE, [kb.citation("torsion/phiQ2")]
    return ExclusionVerdict("C3xC15-C3xC21", ["C3xC15", "C3xC21"], status, evidence, cites,
                            scope="mod-3 image 3B.1.1 or 3B.1.2 (the 3Cs.1.1 case is covered by isogeny-products)")


# -- C6 x C12 fiber ----------------------------------------------------------------------


def check_c6c12(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    num, den = kb.jmap("E2-in-E3")
    rows = {}
    for a in kb.j_list("c6c12-fiber"):
        roots = rational_roots(num - den * a)
        rows[str(a)] = sorted(str(r) for r in roots)
    no_roots = all(not r for r in rows.values())
    branches = {
        "2Cn": "cubic Galois Q(E[2]) inside an S3 field",
        "2B or 2Cs": "C2 x C12 over Q(sqrt-3)",
        "GL2(F2)": {"fiber_j_values": kb.j_list_factored("c6c12-fiber"),
                    "j_map": "2^10*3^3*y^3(1-4y^3)", "rational_roots": rows, "no_rational_roots": no_roots},
    }
    cites = [c["citation"] for c in kb.cited_facts() if c["target"] == "6x12"]
    return ExclusionVerdict("C6xC12", ["C6xC12"], CITED_FACT if no_roots else INCONCLUSIVE,
                            {"branches": branches}, cites, scope="non-CM; modular-curve steps imported")
