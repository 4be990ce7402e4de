"""Table comparisons and the imported (cited) steps."""

from __future__ import annotations

from ..knowledgebase import TorsionGroupId, default_kb
from .verdict import CITED_FACT, INCONCLUSIVE, ExclusionVerdict


def check_cm_table(kb=None) -> ExclusionVerdict:
    """CM groups over sextic fields that fall outside the non-CM classification."""
    kb = kb or default_kb()
    cm = set(kb.torsion_table("phiCM6"))
    members = set(kb.torsion_table("theorem1.1"))
    extra = sorted(cm - members)
    cited = {c["target"]: c for c in kb.cited_facts()}
    covered = [g for g in extra if g.key in cited]
    status = CITED_FACT if len(covered) == len(extra) else INCONCLUSIVE
    evidence = {
        "cm_groups_outside_classification": [g.label for g in extra],
        "imported": {g.label: cited[g.key]["reason"] for g in covered},
        "argument": "groups in the CM list but not in the classification must be ruled out by the external CM analysis",
    }
    return ExclusionVerdict("CM-table", [g.label for g in extra], status, evidence,
                            [kb.citation("torsion/phiCM6")] + [cited[g.key]["citation"] for g in covered],
                            scope="CM curves")


def cited_fact_entries(kb=None) -> list[dict]:
    """Imported steps, listed separately in reports."""
    kb = kb or default_kb()
    out = []
    for c in kb.cited_facts():
        head, _, branch = c["target"].partition("/")
        out.append({
            "target": TorsionGroupId.parse(head).label,
            "branch": branch or None,
            "reason": c["reason"],
            "citation": c["citation"],
        })
    return out
