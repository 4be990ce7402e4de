"""Exclusions by computations with subgroups of GL2(Z/N)."""

from __future__ import annotations

import json
from collections import Counter

from ..gl2group import matrix as mx
from ..gl2group.abstract import closure_quotient, is_generalized_s3_type
from ..gl2group.forms import conjugate_into
from ..gl2group.group import (
    DEFAULT_CEILING,
    CeilingExceeded,
    FiniteMatrixGroup,
    are_conjugate,
    borel,
    contains_complex_conjugation,
    gl2,
    orbit,
    orbits_of_order,
    reduction,
)
from ..gl2group.labels import label_group
from ..gl2group.lifts import lifts_of
from ..gl2group.subgroups import subgroups_up_to_conjugacy
from ..knowledgebase import TorsionGroupId, default_kb
from .verdict import CITED_FACT, EXCLUDED, INCONCLUSIVE, ExclusionVerdict, jsonable


def _gens_json(G: FiniteMatrixGroup) -> list:
    return [mx.to_rows(g) for g in G.generators]


# -- C25 ---------------------------------------------------------------------


def c25_enumeration(ceiling: int = DEFAULT_CEILING, cache=None) -> dict:
    key = ("c25", ceiling)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    rows = []
    overall: Counter = Counter()
    hs = subgroups_up_to_conjugacy(borel(5), require_det_surjective=True, ceiling=ceiling)
    fixed_ok = True
    for H in hs:
        h_fixes = any(all(mx.act(h, v, 5) == v for h in H.generators) for v in mx.vectors_of_order(5, 5))
        hist: Counter = Counter()
        groups = []
        n_subspaces = 0
        for fam in lifts_of(H):
            n_subspaces += 1
            for G in fam.groups:
                sizes = Counter(len(o) for o in orbits_of_order(G, 25))
                hist.update(sizes)
                if sizes.get(1) and not h_fixes:
                    fixed_ok = False
                groups.append({
                    "order": fam.order,
                    "kernel_dim": len(fam.N),
                    "generators": _gens_json(G),
                    "orbit_sizes": dict(sorted(sizes.items())),
                })
        overall.update(hist)
        rows.append({
            "H_generators": _gens_json(H),
            "H_order": H.order,
            "H_fixes_vector_mod_5": h_fixes,
            "invariant_subspaces": n_subspaces,
            "lifts": len(groups),
            "index_histogram": dict(sorted(hist.items())),
            "groups": groups,
        })
    full = orbit(gl2(25), (1, 0))
    out = {
        "H_count": len(hs),
        "G_count": sum(r["lifts"] for r in rows),
        "index_histogram": dict(sorted(overall.items())),
        "index_6_found": overall.get(6, 0) > 0,
        "index_1_only_where_H_fixes": fixed_ok,
        "full_gl2_orbit_of_order_25_vector": len(full),
        "rows": rows,
    }
    out = json.loads(json.dumps(jsonable(out)))
    if cache is not None:
        cache.put(key, out)
    return out


def check_c25(ceiling: int = DEFAULT_CEILING, cache=None, kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    try:
        data = c25_enumeration(ceiling, cache)
    except CeilingExceeded as e:
        return ExclusionVerdict(
            "C25", ["C25"], INCONCLUSIVE,
            {"diagnostic": str(e), "order": e.order, "ceiling": e.ceiling},
            [kb.citation("odd-prime-isogeny-exceptions")],
        )
    # JSON round trips turn integer keys into strings
    hist = {int(k): v for k, v in data["index_histogram"].items()}
    evidence = {
        "hypothesis": "G_E(5) lies in a Borel subgroup (rational 5-isogeny) and [Q(P_25):Q] = 6",
        "stronger_hypothesis": "all det-surjective subgroups of the Borel mod 5 up to conjugacy, a superset of the six possible labels",
        "method": "lifts to GL2(Z/25) with reduction exactly H, one per kernel-conjugacy class; orbit sizes of the 600 vectors of order 25",
        "lagrange_lemma": "every such G has order dividing 80*625, which is prime to 3, so no index equals 6",
        **{k: v for k, v in data.items()},
    }
    status = EXCLUDED if 6 not in hist else INCONCLUSIVE
    return ExclusionVerdict(
        "C25", ["C25"], status, evidence,
        [kb.citation("odd-prime-isogeny-exceptions"), kb.citation("torsion/phiQ1"),
         kb.citation("torsion/phiQ2"), kb.citation("torsion/phiQ3")],
        scope="non-CM",
    )


# -- C7 x C7 and C9 x C9 -----------------------------------------------------------


def check_c7xc7(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    hs = subgroups_up_to_conjugacy(gl2(7), max_order=6, require_det_surjective=True)
    rows = []
    all_split = True
    for H in hs:
        t = conjugate_into(H, "split-cartan")
        has7 = any(mx.element_order(g, 7) == 7 for g in H.elements)
        all_split &= t is not None
        rows.append({
            "generators": _gens_json(H),
            "order": H.order,
            "split_cartan_conjugator": mx.to_rows(t) if t is not None else None,
            "has_order_7_element": has7,
        })
    iso49 = kb.isogeny_degree_allowed(49)
    ok = all_split and iso49.forbidden and bool(hs)
    evidence = {
        "hypothesis": "Q(E[7]) lies in a sextic field, so |G_E(7)| <= 6",
        "stronger_hypothesis": "all det-surjective subgroups of GL2(F7) of order <= 6, without consulting image tables",
        "det_lemma": "det onto F7* forces 6 | |H|, so |H| = 6",
        "subgroups": rows,
        "conclusion": "two independent rational 7-isogenies, so an isogenous curve has a cyclic rational 49-isogeny",
        "isogeny_49": iso49.to_json(),
        "route": "alternative to comparing with the possible mod-7 image orders",
    }
    return ExclusionVerdict("C7xC7", ["C7xC7"], EXCLUDED if ok else INCONCLUSIVE, evidence,
                            [kb.citation("isogeny-degrees")], scope="non-CM")


def check_c9xc9(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    low = [kb.torsion_table(s) for s in ("phiQ1", "phiQ2", "phiQ3")]
    c9c9 = TorsionGroupId(9, 9)
    not_low = all(c9c9 not in t for t in low)
    hs = subgroups_up_to_conjugacy(gl2(9), order=6, require_det_surjective=True)
    target = label_group("3Cs.1.1")
    gl3 = gl2(3)
    rows = []
    ok = bool(hs)
    for G in hs:
        cyclic = any(mx.element_order(g, 9) == 6 for g in G.elements)
        t = conjugate_into(G, "borel")
        red = reduction(G, 3)
        red_conj = are_conjugate(red, target, gl3) is not None
        ok &= cyclic and t is not None and red_conj
        rows.append({
            "generators": _gens_json(G),
            "cyclic": cyclic,
            "borel_conjugator": mx.to_rows(t) if t is not None else None,
            "mod3_reduction_conjugate_to_3Cs.1.1": red_conj,
        })
    iso27 = kb.isogeny_degree_allowed(27)
    ok = ok and not_low and "cm-only" in iso27.flags
    evidence = {
        "hypothesis": "Q(E[9]) lies in a sextic field; C9xC9 is absent from the degree 1, 2, 3 tables, so |G_E(9)| = 6",
        "absent_from_low_degree_tables": not_low,
        "cyclicity_lemma": "a non-cyclic group of order 6 is S3, whose abelianization has order 2, so its det image has order <= 2 < 6",
        "subgroups": rows,
        "conclusion": "independent rational 9- and 3-isogenies; an isogenous curve has a rational 27-isogeny, which forces CM",
        "isogeny_27": iso27.to_json(),
    }
    return ExclusionVerdict("C9xC9", ["C9xC9"], EXCLUDED if ok else INCONCLUSIVE, evidence,
                            [kb.citation("isogeny-degrees"), kb.citation("torsion/phiQ2"), kb.citation("torsion/phiQ3")],
                            scope="non-CM")


# -- C27 and isogeny products -------------------------------------------------------


def check_c27(field_degree: int = 6, growth: int | None = None, bound: int | None = None, kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    growth = kb.constant("growth/81-over-27") if growth is None else growth
    bound = kb.degree_bound(81) if bound is None else bound
    product = growth * field_degree
    ok = product < bound
    evidence = {
        "inequality": "%d * %d = %d < %d" % (growth, field_degree, product, bound) if ok
        else "%d * %d = %d is not < %d" % (growth, field_degree, product, bound),
        "growth_81_over_27": growth,
        "field_degree": field_degree,
        "degree_bound_81": bound,
        "semantics": "strict inequality",
    }
    return ExclusionVerdict("C27", ["C27"], EXCLUDED if ok else INCONCLUSIVE, evidence,
                            [kb.citation("growth/81-over-27"), kb.citation("degree-bounds")], scope="non-CM")


PRODUCTS = {35: "C35", 39: "C39", 65: "C65", 91: "C91"}
NINE_P = {45: "C3xC15", 63: "C3xC21"}


def check_isogeny_products(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    rows = {}
    ok = True
    for n, tgt in {**PRODUCTS, **NINE_P}.items():
        s = kb.isogeny_degree_allowed(n)
        rows[tgt] = {"degree": n, "branch": "3Cs.1.1" if n in NINE_P else "any", **s.to_json()}
        ok &= s.forbidden
    evidence = {
        "argument": "points of odd prime orders p, q over a sextic field give rational p- and q-isogenies, hence a rational pq-isogeny; "
                    "with mod-3 image 3Cs.1.1 the curve is isogenous to one with a rational 9p-isogeny",
        "degrees": rows,
    }
    return ExclusionVerdict("isogeny-products", list(PRODUCTS.values()) + list(NINE_P.values()), EXCLUDED if ok else INCONCLUSIVE, evidence,
                            [kb.citation("isogeny-degrees"), kb.citation("odd-prime-isogeny-exceptions")],
                            scope="non-CM, away from the two p = 7 exceptional curves")


# -- closure quotients -----------------------------------------------------------------


EXPECTED_C36_LIST = ("C6", "S3", "S3 x C3", "D6")
C3C18_LIST = ("C6", "S3", "S3 x C3")


def admissible_subgroups(n: int) -> list[FiniteMatrixGroup]:
    return [G for G in subgroups_up_to_conjugacy(gl2(n), require_det_surjective=True)
            if contains_complex_conjugation(G)]


def closure_census(n: int, k: int, sizes=(6,), groups=None) -> dict:
    """Closure-quotient classes over admissible G and order-k vectors with given orbit sizes."""
    groups = groups if groups is not None else admissible_subgroups(n)
    found: dict[str, dict] = {}
    for G in groups:
        for o in orbits_of_order(G, k):
            if len(o) not in sizes:
                continue
            Q = closure_quotient(G, min(o))
            name = Q.identify()
            row = found.setdefault(name, {"order": Q.order, "s3_type": is_generalized_s3_type(Q),
                                          "exponent": Q.exponent(), "occurrences": 0})
            row["occurrences"] += 1
    return dict(sorted(found.items()))


def check_c36_closures(kb=None) -> ExclusionVerdict:
    kb = kb or default_kb()
    g9 = admissible_subgroups(9)
    q9 = closure_census(9, 9, (6,), g9)
    small9 = closure_census(9, 9, (1, 2, 3), g9)
    g4 = admissible_subgroups(4)
    q4 = closure_census(4, 4, (6,), g4)
    contained = all(name in q9 for name in EXPECTED_C36_LIST)
    all_s3 = all(r["s3_type"] for r in q9.values())
    extras = sorted(set(q9) - set(EXPECTED_C36_LIST))
    mod4_ok = all(r["s3_type"] for r in q4.values()) and bool(q4)
    mod4_exact = set(q4) == {"S3"}
    exp4 = sorted(n for n, r in q9.items() if r["exponent"] % 4 == 0)
    evidence = {
        "filter": "det-surjective and containing complex conjugation",
        "admissible_groups": {"mod 9": len(g9), "mod 4": len(g4)},
        "mod9_orbit6_quotients": q9,
        "mod9_orbit_1_2_3_quotients": small9,
        "expected_list": list(EXPECTED_C36_LIST),
        "expected_list_contained": contained,
        "extras": extras,
        "all_orbit6_generalized_s3_type": all_s3,
        "exponent_4_flagged": exp4,
        "mod4_orbit6_quotients": q4,
        "mod4_all_generalized_s3_type": mod4_ok,
        "mod4_all_exactly_s3": mod4_exact,
        "mod4_extras": sorted(set(q4) - {"S3"}),
        "mod4_note": "a quadratic twist of a curve with S3 image mod 4 has image inside {+-1} x S3, "
                     "whose orbit-6 quotient is S3 x C2; still of generalized S3-type",
        "conclusion": "Q(P_9) and Q(P_4) lie in Q(3^infinity), hence so does a point of order 36",
        "external_step": "no point of order 36 over Q(3^infinity)",
    }
    computed_ok = contained and all_s3 and mod4_ok
    return ExclusionVerdict("C36", ["C36"], CITED_FACT if computed_ok else INCONCLUSIVE, evidence,
                            [c["citation"] for c in kb.cited_facts() if c["target"] == "1x36/final"],
                            scope="non-CM; final step imported")
