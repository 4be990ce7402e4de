"""Static facts imported from the literature, each with a citation."""

from .kb import (
    FactsError,
    IsogenyStatus,
    KnowledgeBase,
    KnowledgeRecord,
    TorsionGroupId,
    default_kb,
    evaluate_factored,
    evaluate_jmap,
    family_curve,
    isogeny_degree_allowed,
    j_list,
    jmap,
    load_facts,
    set_default_kb,
    torsion_table,
)

__all__ = [
    "FactsError",
    "IsogenyStatus",
    "KnowledgeBase",
    "KnowledgeRecord",
    "TorsionGroupId",
    "default_kb",
    "evaluate_factored",
    "evaluate_jmap",
    "family_curve",
    "isogeny_degree_allowed",
    "j_list",
    "jmap",
    "load_facts",
    "set_default_kb",
    "torsion_table",
]
