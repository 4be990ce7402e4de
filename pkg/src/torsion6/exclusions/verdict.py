"""The verdict record every check returns."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

EXCLUDED = "excluded"
INCONCLUSIVE = "inconclusive"
CITED_FACT = "cited-fact"
FAILED = "failed"
STATUSES = (EXCLUDED, INCONCLUSIVE, CITED_FACT, FAILED)


@dataclass
class ExclusionVerdict:
    id: str
    targets: list[str]
    status: str
    evidence: dict = field(default_factory=dict)
    citations: list[str] = field(default_factory=list)
    scope: str = ""
    seed: int | None = None
    runtime_ms: int | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError("unknown status %r" % self.status)
        if self.status == EXCLUDED and not self.evidence:
            raise ValueError("%s: excluded needs evidence" % self.id)
        if self.status == CITED_FACT and not self.citations:
            raise ValueError("%s: cited-fact needs a citation" % self.id)

    @property
    def target(self) -> str:
        return ",".join(self.targets)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "target": self.target,
            "targets": list(self.targets),
            "scope": self.scope,
            "status": self.status,
            "citations": list(self.citations),
            "evidence": jsonable(self.evidence),
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
        }


def jsonable(x: Any):
    """Exact, deterministic JSON form: rationals as 'p/q' strings, sets sorted."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=lambda v: (str(type(v)), v))
    if hasattr(x, "to_json"):
        return jsonable(x.to_json())
    return x
