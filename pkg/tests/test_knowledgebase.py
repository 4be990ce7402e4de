import json
from fractions import Fraction

import pytest
import sympy

from torsion6.knowledgebase import (
    FactsError,
    TorsionGroupId,
    default_kb,
    evaluate_factored,
    evaluate_jmap,
    load_facts,
)

KB = default_kb()

# rational cyclic isogeny degrees (Mazur, Kenku)
ISOGENY_DEGREES = set(range(1, 20)) | {21, 25, 27, 37, 43, 67, 163}

# j-invariants of the non-CM curves with a rational 21- or 15-isogeny
J21 = {Fraction(-3**2 * 5**6, 2**3), Fraction(3**3 * 5**3, 2), Fraction(-3**2 * 5**3 * 101**3, 2**21),
       Fraction(-3**3 * 5**3 * 383**3, 2**7)}
J15 = {Fraction(-5**2, 2), Fraction(-5**2 * 241**3, 2**3), Fraction(-5 * 29**3, 2**5), Fraction(5 * 211**3, 2**15)}


def test_isogeny_table():
    for n in range(1, 200):
        st = KB.isogeny_degree_allowed(n)
        assert st.forbidden == (n not in ISOGENY_DEGREES), n
    assert "cm-only" in KB.isogeny_degree_allowed(27).flags
    assert KB.isogeny_degree_allowed(49).forbidden
    with pytest.raises(ValueError):
        KB.isogeny_degree_allowed(0)


def _has_rational_point(jmap, j):
    h = sympy.Symbol("h")
    return bool(sympy.Poly(sympy.numer(sympy.together(jmap(h) - j)), h).ground_roots())


X0 = {
    3: lambda h: (h + 27) * (h + 3) ** 3 / h,
    5: lambda h: (h**2 + 10 * h + 5) ** 3 / h,
    7: lambda h: (h**2 + 13 * h + 49) * (h**2 + 5 * h + 1) ** 3 / h,
}


@pytest.mark.parametrize("kind,primes", [("isogeny-21", (3, 7)), ("isogeny-15", (3, 5))])
def test_j_lists_lie_on_x0(kind, primes):
    for j in KB.j_list(kind):
        q = sympy.Rational(j.numerator, j.denominator)
        assert all(_has_rational_point(X0[p], q) for p in primes), j


def test_misprinted_21_value_is_not_on_x0_7():
    assert not _has_rational_point(X0[7], sympy.Rational(3**3 * 5**3 * 101**3, 2**21))


def test_j_lists():
    assert set(KB.j_list("isogeny-21")) == J21
    assert set(KB.j_list("isogeny-15")) == J15
    for kind in ("isogeny-21", "isogeny-15"):
        assert [evaluate_factored(s) for s in KB.j_list_factored(kind)] == KB.j_list(kind)


def test_jmap_values():
    # x = 12 on the 3Ns curve is the CM point j = 1728
    assert evaluate_jmap("3Ns", 12) == 1728
    num, den = KB.jmap("E2-in-E3")
    assert num.degree == 6


def test_torsion_tables():
    t = KB.torsion_table("theorem1.1")
    labels = {g.label for g in t}
    assert "C3xC18" in labels and "C30" in labels
    assert {g.label for g in KB.conditional_groups()} == {"C3xC18"}
    cm = {g.label for g in KB.torsion_table("phiCM6")}
    assert cm - labels == {"C19", "C26"}
    assert KB.torsion_table("phiQ1") == sorted(TorsionGroupId.parse(s) for s in
                                               ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "12",
                                                "2x2", "2x4", "2x6", "2x8"])


def test_group_id_parse():
    assert TorsionGroupId.parse("C2xC30") == TorsionGroupId(2, 30)
    assert TorsionGroupId.parse("2x30").label == "C2xC30"
    assert TorsionGroupId.parse("C25").key == "1x25"
    with pytest.raises(ValueError):
        TorsionGroupId.parse("C4xC6")


def test_citations_present():
    for r in KB.records.values():
        assert r.citation and r.provenance == "static-import"
    for c in KB.cited_facts():
        assert c["citation"]


def test_bad_facts_file(tmp_path):
    p = tmp_path / "facts.json"
    data = KB.to_json()
    data["records"][0]["citation"] = ""
    p.write_text(json.dumps(data))
    with pytest.raises(FactsError):
        load_facts(p)
    p.write_text("{")
    with pytest.raises(FactsError):
        load_facts(p)


def test_roundtrip(tmp_path):
    p = tmp_path / "facts.json"
    p.write_text(json.dumps(KB.to_json()))
    kb2 = load_facts(p)
    assert kb2.j_list("isogeny-21") == KB.j_list("isogeny-21")
    assert kb2.version == KB.version


def test_unknown_kind():
    with pytest.raises(KeyError, match="valid"):
        KB.j_list("isogeny-22")


def test_family_singular():
    with pytest.raises(ValueError):
        KB.family_curve("threeCs-family", 0)
