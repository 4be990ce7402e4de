"""Citation-tagged static facts: classification tables, j-lists, j-maps, families.

Facts ship as ``facts.json`` next to this module.  A different file can be
loaded for auditing with :func:`load_facts` (the CLI's ``--facts``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from ..ellcurve import EllipticCurveQ
from ..polyring import RationalPolynomial

PROVENANCE = "static-import"
KINDS = {
    "isogeny-table",
    "j-list",
    "torsion-list",
    "prime-list",
    "degree-bounds",
    "constant",
    "curve-data",
    "jmap",
    "family",
}


class FactsError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TorsionGroupId:
    """C_m + C_n with m | n."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.n % self.m:
            raise ValueError("need m | n with m >= 1, got (%d, %d)" % (self.m, self.n))

    @classmethod
    def parse(cls, text: str) -> "TorsionGroupId":
        """Accepts '2x30', 'C2xC30', 'C30', '30'."""
        s = text.replace("C", "").replace(" ", "").replace("+", "x").lower()
        parts = s.split("x")
        if len(parts) == 1:
            return cls(1, int(parts[0]))
        if len(parts) == 2:
            return cls(int(parts[0]), int(parts[1]))
        raise ValueError("cannot parse group id %r" % text)

    @property
    def key(self) -> str:
        return "%dx%d" % (self.m, self.n)

    @property
    def label(self) -> str:
        return "C%d" % self.n if self.m == 1 else "C%dxC%d" % (self.m, self.n)

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class KnowledgeRecord:
    key: str
    kind: str
    payload: Any
    citation: str
    provenance: str = PROVENANCE
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = {"key": self.key, "kind": self.kind, "payload": self.payload, "citation": self.citation}
        d.update(self.extra)
        return d


@dataclass(frozen=True)
class IsogenyStatus:
    status: str  # allowed | allowed-finitely-many | forbidden
    flags: tuple = ()

    @property
    def forbidden(self) -> bool:
        return self.status == "forbidden"

    def to_json(self) -> dict:
        return {"status": self.status, "flags": list(self.flags)}


_FACTOR = re.compile(r"^(\d+)(?:\^(\d+))?$")


def evaluate_factored(text: str) -> Fraction:
    """'-3^3*5^3*383^3/2^7' -> exact rational."""
    s = text.replace(" ", "")
    sign = -1 if s.startswith("-") else 1
    s = s.lstrip("-")
    num, _, den = s.partition("/")

    def prod(part: str) -> int:
        out = 1
        for f in part.split("*"):
            m = _FACTOR.match(f)
            if not m:
                raise FactsError("bad factored term %r in %r" % (f, text))
            out *= int(m.group(1)) ** int(m.group(2) or 1)
        return out

    return sign * Fraction(prod(num), prod(den) if den else 1)


class KnowledgeBase:
    def __init__(self, data: dict, source: str):
        self.source = source
        self.version = data.get("facts_version")
        self.records: dict[str, KnowledgeRecord] = {}
        for r in data.get("records", []):
            rec = KnowledgeRecord(
                key=r["key"],
                kind=r["kind"],
                payload=r["payload"],
                citation=r.get("citation", ""),
                extra={k: v for k, v in r.items() if k not in ("key", "kind", "payload", "citation")},
            )
            if not rec.citation.strip():
                raise FactsError("record %r has no citation" % rec.key)
            if rec.kind not in KINDS:
                raise FactsError("record %r has unknown kind %r" % (rec.key, rec.kind))
            self.records[rec.key] = rec
        self.cited: list[dict] = list(data.get("cited_facts", []))
        for c in self.cited:
            if not c.get("citation", "").strip():
                raise FactsError("cited fact %r has no citation" % c.get("target"))

    def to_json(self) -> dict:
        return {
            "facts_version": self.version,
            "records": [r.to_json() for r in self.records.values()],
            "cited_facts": self.cited,
        }

    def record(self, key: str) -> KnowledgeRecord:
        if key not in self.records:
            raise KeyError("no fact %r" % key)
        return self.records[key]

    def _choice(self, prefix: str, kind: str) -> KnowledgeRecord:
        key = "%s/%s" % (prefix, kind)
        if key not in self.records:
            valid = sorted(k.split("/", 1)[1] for k in self.records if k.startswith(prefix + "/"))
            raise KeyError("unknown %s %r; valid: %s" % (prefix, kind, ", ".join(valid)))
        return self.records[key]

    # -- isogenies ---------------------------------------------------------

    def isogeny_degree_allowed(self, n: int) -> IsogenyStatus:
        if n < 1:
            raise ValueError("isogeny degree must be positive")
        t = self.record("isogeny-degrees").payload
        flags = ("cm-only",) if n in t["cm_only"] else ()
        if n not in t["allowed"]:
            return IsogenyStatus("forbidden")
        if n in t["infinitely_many"]:
            return IsogenyStatus("allowed", flags)
        return IsogenyStatus("allowed-finitely-many", flags)

    # -- j-lists -------------------------------------------------------------

    def j_list(self, kind: str) -> list[Fraction]:
        return [Fraction(v) for v in self._choice("j-list", kind).payload["values"]]

    def j_list_factored(self, kind: str) -> list[str]:
        return list(self._choice("j-list", kind).payload["factored"])

    # -- torsion tables ------------------------------------------------------

    def torsion_table(self, scope: str) -> list:
        if scope == "rQ6":
            return list(self.record("rQ6").payload)
        rec = self._choice("torsion", scope)
        return sorted(TorsionGroupId.parse(s) for s in rec.payload)

    def conditional_groups(self) -> list[TorsionGroupId]:
        rec = self.record("torsion/theorem1.1")
        return [TorsionGroupId.parse(s) for s in rec.extra.get("conditional", [])]

    # -- bounds ----------------------------------------------------------------

    def degree_bound(self, point_order) -> int:
        for row in self.record("degree-bounds").payload:
            if row["point_order"] == point_order:
                return row["min_degree"]
        raise KeyError("no degree bound for order %r" % (point_order,))

    def constant(self, key: str):
        return self.record(key).payload

    # -- j-maps and families -----------------------------------------------------

    def jmap(self, kind: str) -> tuple[RationalPolynomial, RationalPolynomial]:
        p = self._choice("jmap", kind).payload
        return RationalPolynomial(p["numerator"]), RationalPolynomial(p["denominator"])

    def family_polys(self, kind: str) -> tuple[RationalPolynomial, RationalPolynomial]:
        p = self._choice("family", kind).payload
        return RationalPolynomial(p["a"]), RationalPolynomial(p["b"])

    def family_curve(self, kind: str, t) -> EllipticCurveQ:
        t = Fraction(t)
        p = self._choice("family", kind).payload
        if t in {Fraction(s) for s in p["singular"]}:
            raise ValueError("t = %s is singular for family %s" % (t, kind))
        a, b = self.family_polys(kind)
        return EllipticCurveQ(a(t), b(t))

    def family_cm_values(self, kind: str) -> list[Fraction]:
        return [Fraction(s) for s in self._choice("family", kind).payload["cm"]]

    def cited_facts(self) -> list[dict]:
        return [dict(c) for c in self.cited]

    def citation(self, key: str) -> str:
        return self.record(key).citation


_DEFAULT: KnowledgeBase | None = None


def load_facts(path: str | Path | None = None) -> KnowledgeBase:
    if path is None:
        text = resources.files(__package__).joinpath("facts.json").read_text(encoding="utf-8")
        source = "builtin"
    else:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FactsError("facts file %s is not valid JSON: %s" % (source, e)) from None
    return KnowledgeBase(data, source)


def default_kb() -> KnowledgeBase:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_facts()
    return _DEFAULT


def set_default_kb(kb: KnowledgeBase | None) -> None:
    global _DEFAULT
    _DEFAULT = kb


# module-level conveniences over the default knowledge base


def isogeny_degree_allowed(n: int) -> IsogenyStatus:
    return default_kb().isogeny_degree_allowed(n)


def j_list(kind: str) -> list[Fraction]:
    return default_kb().j_list(kind)


def torsion_table(scope: str) -> list:
    return default_kb().torsion_table(scope)


def family_curve(kind: str, t) -> EllipticCurveQ:
    return default_kb().family_curve(kind, t)


def jmap(kind: str) -> tuple[RationalPolynomial, RationalPolynomial]:
    return default_kb().jmap(kind)


def evaluate_jmap(kind: str, value) -> Fraction:
    num, den = jmap(kind)
    d = den(Fraction(value))
    if d == 0:
        raise ZeroDivisionError("j-map %s has a pole at %s" % (kind, value))
    return num(Fraction(value)) / d
