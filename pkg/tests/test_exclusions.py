import copy
import json
from fractions import Fraction

import pytest

from torsion6.ellcurve import EllipticCurveQ, quadratic_twist, torsion_via_lutz_nagell
from torsion6.exclusions import diophantine, group_checks, tables
from torsion6.exclusions.divpoly_checks import check_divpoly_exclusion, divpoly_entry
from torsion6.exclusions.report import CHECKS, CheckConfig, aggregate, resolve, run_all, run_check
from torsion6.exclusions.verdict import CITED_FACT, EXCLUDED, FAILED, INCONCLUSIVE, ExclusionVerdict
from torsion6.exclusions.verify import VerificationError, verify_check, verify_divpoly_entry
from torsion6.knowledgebase import default_kb

KB = default_kb()

# groups that the classification leaves out and that need an argument
NON_MEMBERS = {"C19", "C25", "C26", "C27", "C35", "C36", "C39", "C42", "C45", "C63", "C65", "C91",
               "C2xC30", "C3xC15", "C3xC21", "C6xC12", "C7xC7", "C9xC9"}


def test_coverage_manifest():
    covered = {t for targets, _ in CHECKS.values() for t in targets}
    assert NON_MEMBERS <= covered
    assert "C3xC18" in covered
    members = {g.label for g in KB.torsion_table("theorem1.1")}
    assert not NON_MEMBERS & members


def test_verdict_validation():
    with pytest.raises(ValueError):
        ExclusionVerdict("x", ["C1"], "maybe")
    with pytest.raises(ValueError):
        ExclusionVerdict("x", ["C1"], EXCLUDED, {})
    with pytest.raises(ValueError):
        ExclusionVerdict("x", ["C1"], CITED_FACT, {"a": 1}, [])


def test_aggregate():
    assert aggregate([EXCLUDED, EXCLUDED]) == EXCLUDED
    assert aggregate([EXCLUDED, INCONCLUSIVE]) == INCONCLUSIVE
    assert aggregate([EXCLUDED, CITED_FACT]) == CITED_FACT
    assert aggregate([FAILED, EXCLUDED]) == FAILED


def test_c27_guards():
    assert group_checks.check_c27().status == EXCLUDED
    # a degree-9 field breaks the inequality
    assert group_checks.check_c27(field_degree=9).status == INCONCLUSIVE
    # strict: 7 * 6 = 42 is not below 42
    v = group_checks.check_c27(growth=7, bound=42)
    assert v.status == INCONCLUSIVE
    assert group_checks.check_c27(growth=7, bound=43).status == EXCLUDED


def test_isogeny_products():
    v = group_checks.check_isogeny_products()
    assert v.status == EXCLUDED
    assert not KB.isogeny_degree_allowed(15).forbidden
    assert not KB.isogeny_degree_allowed(21).forbidden
    assert all(KB.isogeny_degree_allowed(n).forbidden for n in (35, 39, 45, 63, 65, 91))


def test_c7xc7_and_verifier():
    v = run_check("C7xC7", CheckConfig()).to_json()
    assert v["status"] == EXCLUDED
    verify_check(v)
    bad = copy.deepcopy(v)
    bad["evidence"]["subgroups"][0]["split_cartan_conjugator"] = [[1, 1], [0, 1]]
    # a wrong conjugator can still happen to work; flip to one that cannot
    bad["evidence"]["subgroups"][0]["generators"] = [[[0, 1], [1, 0]], [[3, 0], [0, 1]]]
    with pytest.raises(VerificationError):
        verify_check(bad)


def test_c9xc9():
    v = group_checks.check_c9xc9()
    assert v.status == EXCLUDED
    verify_check(json.loads(json.dumps(v.to_json())))


def test_divpoly_verifier_detects_tampering():
    e = divpoly_entry(Fraction(1, 2), 15, 4)
    assert e["degree"] == 96 and e["certificate"]["kind"] == "no-factor-below"
    verify_divpoly_entry(e)
    bad = copy.deepcopy(e)
    p = str(bad["certificate"]["witness_primes"][0])
    pat = bad["certificate"]["patterns"][p]
    pat["1"] = pat.get("1", 0) + 1
    with pytest.raises(VerificationError):
        verify_divpoly_entry(bad)
    bad = copy.deepcopy(e)
    bad["model"]["a"] += 1
    with pytest.raises(VerificationError):
        verify_divpoly_entry(bad)


def test_unsupported_divpoly_kind():
    with pytest.raises(ValueError):
        check_divpoly_exclusion("isogeny-15", 63)


def test_point_verifier():
    ev = {"x": {"curve": "y^2 = x^3 + (0)x + (27)", "points": ["O", "(-3, 0)"]}}
    from torsion6.exclusions.verify import verify_points
    assert verify_points(ev) == 1
    ev["x"]["points"].append("(1, 1)")
    with pytest.raises(VerificationError):
        verify_points(ev)


def test_c3c15_twist_sanity():
    # y^2 = x^3 + 1 has a rational 3-point (0, 1)
    d3 = diophantine.twist_classes_with_point(EllipticCurveQ(0, 1), 3)
    assert 1 in d3
    # 11a1 has a rational 5-point; classes are relative to its twist-minimal model,
    # so compare against Lutz-Nagell on small twists of that model
    A, B, _ = EllipticCurveQ(-13392, -1080432).twist_minimal_integral()
    M = EllipticCurveQ(A, B)
    d5 = diophantine.twist_classes_with_point(M, 5)
    hits = {diophantine._twist_class(d) for d in (-15, -11, -10, -7, -6, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 11, 15)
            if torsion_via_lutz_nagell(quadratic_twist(M, d)).order % 5 == 0}
    assert hits and hits <= set(d5)
    v = diophantine.check_c3c15_c3c21()
    assert v.status == EXCLUDED
    assert all(not r["common"] for r in v.evidence["C3xC15"]["curves"])


def test_c3c18_is_conditional():
    v = diophantine.check_c3c18_main()
    assert v.status == INCONCLUSIVE
    assert v.evidence["non_2B_branches_excluded"]


def test_identities():
    c = diophantine.threecs_chain()
    assert c["discriminant_identity_exact_holds"]
    assert not c["discriminant_identity_as_stated_holds"]
    assert all(r["singular"] or r["a(t)"] == "0" for r in c["chain_corrected"]["pullback"])


def test_cm_table():
    v = tables.check_cm_table()
    assert v.status == CITED_FACT
    assert sorted(v.targets) == ["C19", "C26"]


def test_resolve():
    assert resolve(["C2xC30"]) == ["C2xC30"]
    assert resolve(["2x30"]) == ["C2xC30", "C2xC30-aux"]
    assert resolve(["C35"]) == ["isogeny-products"]
    with pytest.raises(KeyError):
        resolve(["C11"])


def test_partial_report_verifies():
    rep = run_all(only=["C27", "C7xC7", "C3xC18", "C19"]).to_json()
    assert {t: v["status"] for t, v in rep["targets"].items()} == {
        "C19": CITED_FACT, "C26": CITED_FACT, "C27": EXCLUDED, "C7xC7": EXCLUDED, "C3xC18": INCONCLUSIVE}
    from torsion6.exclusions.verify import verify_report
    assert len(verify_report(rep)) == 4


def test_failed_check_is_reported(monkeypatch):
    def boom(**kw):
        raise RuntimeError("boom")
    monkeypatch.setitem(CHECKS, "C27", (["C27"], lambda cfg, kb, cache: boom()))
    v = run_check("C27", CheckConfig())
    assert v.status == FAILED and "boom" in v.evidence["error"]
