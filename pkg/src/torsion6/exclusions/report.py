"""Run every check and assemble the report."""

from __future__ import annotations

import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from ..gl2group.group import DEFAULT_CEILING
from ..knowledgebase import TorsionGroupId, default_kb, load_facts
from ..polyring.factor import DEFAULT_SEED, PRIME_BUDGET
from . import diophantine, divpoly_checks, group_checks, tables
from .verdict import CITED_FACT, EXCLUDED, FAILED, INCONCLUSIVE, ExclusionVerdict

REPORT_VERSION = "1"


@dataclass
class CheckConfig:
    seed: int = DEFAULT_SEED
    prime_budget: int = PRIME_BUDGET
    ceiling: int = DEFAULT_CEILING
    facts: str | None = None
    timings: bool = False

    def to_json(self) -> dict:
        d = asdict(self)
        d.pop("timings")
        return d


def _divpoly(fn):
    def run(cfg: CheckConfig, kb, cache):
        return fn(seed=cfg.seed, prime_budget=cfg.prime_budget, kb=kb, cache=cache)
    return run


def _plain(fn):
    def run(cfg: CheckConfig, kb, cache):
        return fn(kb=kb)
    return run


def _c25(cfg: CheckConfig, kb, cache):
    return group_checks.check_c25(ceiling=cfg.ceiling, cache=cache, kb=kb)


# id -> (targets, runner); order is report order
CHECKS = {
    "C25": (["C25"], _c25),
    "C27": (["C27"], _plain(group_checks.check_c27)),
    "C63": (["C63"], _divpoly(divpoly_checks.check_c63)),
    "C42": (["C42"], _divpoly(divpoly_checks.check_c42)),
    "C45": (["C45"], _divpoly(divpoly_checks.check_c45)),
    "isogeny-products": (["C35", "C39", "C65", "C91", "C3xC15", "C3xC21"], _plain(group_checks.check_isogeny_products)),
    "C3xC15-C3xC21": (["C3xC15", "C3xC21"], _plain(diophantine.check_c3c15_c3c21)),
    "C7xC7": (["C7xC7"], _plain(group_checks.check_c7xc7)),
    "C9xC9": (["C9xC9"], _plain(group_checks.check_c9xc9)),
    "C6xC12": (["C6xC12"], _plain(diophantine.check_c6c12)),
    "C36": (["C36"], _plain(group_checks.check_c36_closures)),
    "C2xC30": (["C2xC30"], _divpoly(divpoly_checks.check_c2c30)),
    "C2xC30-aux": (["C2xC30"], _plain(diophantine.check_c2c30_aux)),
    "C3xC18": (["C3xC18"], _plain(diophantine.check_c3c18_main)),
    "CM-table": (["C19", "C26"], _plain(tables.check_cm_table)),
}


def check_ids() -> list[str]:
    return list(CHECKS)


def resolve(names) -> list[str]:
    """Check ids for a mix of check ids and target group labels, in report order."""
    want = set()
    for name in names:
        if name in CHECKS:
            want.add(name)
            continue
        try:
            label = TorsionGroupId.parse(name).label
        except ValueError:
            label = None
        hits = [cid for cid, (tg, _) in CHECKS.items() if label in tg]
        if not hits:
            raise KeyError(name)
        want.update(hits)
    return [cid for cid in CHECKS if cid in want]


def run_check(cid: str, cfg: CheckConfig, cache=None) -> ExclusionVerdict:
    targets, runner = CHECKS[cid]
    kb = load_facts(cfg.facts) if cfg.facts else default_kb()
    t0 = time.perf_counter()
    try:
        v = runner(cfg, kb, cache)
    except Exception as e:
        v = ExclusionVerdict(cid, list(targets), FAILED,
                             {"error": "%s: %s" % (type(e).__name__, e), "traceback": traceback.format_exc()})
    if v.seed is None:
        v.seed = cfg.seed
    v.runtime_ms = round((time.perf_counter() - t0) * 1000) if cfg.timings else None
    return v


def _worker(args):
    cid, cfg, cache = args
    return run_check(cid, cfg, cache).to_json()


def aggregate(statuses: list[str]) -> str:
    if FAILED in statuses:
        return FAILED
    if all(s == EXCLUDED for s in statuses):
        return EXCLUDED
    if INCONCLUSIVE in statuses:
        return INCONCLUSIVE
    return CITED_FACT


@dataclass
class Report:
    config: dict
    checks: list[dict]
    targets: dict = field(default_factory=dict)
    cited_facts: list = field(default_factory=list)
    cross_check: dict = field(default_factory=dict)
    facts_version: int | None = None

    def to_json(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "facts_version": self.facts_version,
            "config": self.config,
            "checks": self.checks,
            "targets": self.targets,
            "cited_facts": self.cited_facts,
            "cross_check": self.cross_check,
        }

    @property
    def complete(self) -> bool:
        return all(c["status"] != FAILED for c in self.checks)


def run_all(cfg: CheckConfig | None = None, only=None, jobs: int = 1, cache=None) -> Report:
    cfg = cfg or CheckConfig()
    kb = load_facts(cfg.facts) if cfg.facts else default_kb()
    ids = resolve(only) if only else check_ids()
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(ids))) as ex:
            results = list(ex.map(_worker, [(cid, cfg, cache) for cid in ids]))
    else:
        results = [_worker((cid, cfg, cache)) for cid in ids]
    by_target: dict[str, list] = {}
    for r in results:
        for t in r["targets"]:
            by_target.setdefault(t, []).append(r)
    targets = {
        t: {"status": aggregate([r["status"] for r in rs]), "checks": [r["id"] for r in rs]}
        for t, rs in by_target.items()
    }
    members = {g.label for g in kb.torsion_table("theorem1.1")}
    conditional = {g.label for g in kb.conditional_groups()}
    cited = tables.cited_fact_entries(kb)
    if not only:
        for c in cited:
            t = c["target"]
            if t not in targets and t not in members:
                targets[t] = {"status": CITED_FACT, "checks": []}
    excluded = sorted(t for t, v in targets.items() if v["status"] == EXCLUDED)
    nonmembers = sorted(t for t in targets if t not in members or t in conditional)
    cross = {
        "excluded_disjoint_from_classification": not (set(excluded) & (members - conditional)),
        "non_member_checks_not_excluded": sorted(
            t for t in nonmembers if targets[t]["status"] not in (EXCLUDED, CITED_FACT) and t not in conditional
        ),
        "conditional_groups": {t: targets[t]["status"] for t in sorted(conditional) if t in targets},
    }
    cross["ok"] = (cross["excluded_disjoint_from_classification"] and not cross["non_member_checks_not_excluded"]
                   and all(s == INCONCLUSIVE for s in cross["conditional_groups"].values()))
    return Report(
        config=cfg.to_json() | {"only": list(only) if only else None},
        checks=results,
        targets=dict(sorted(targets.items(), key=lambda kv: _target_key(kv[0]))),
        cited_facts=cited,
        cross_check=cross,
        facts_version=kb.version,
    )


def _target_key(label: str):
    g = TorsionGroupId.parse(label)
    return (g.m, g.n)


def render_markdown(report: dict) -> str:
    lines = ["# Torsion exclusion report", ""]
    cfg = report["config"]
    lines.append("seed `%s`, prime budget %s, enumeration ceiling %s, facts version %s"
                 % (cfg["seed"], cfg["prime_budget"], cfg["ceiling"], report.get("facts_version")))
    lines += ["", "## Groups", "", "| Group | Status | Checks |", "|---|---|---|"]
    for t, v in report["targets"].items():
        lines.append("| %s | %s | %s |" % (t, v["status"], ", ".join(v["checks"]) or "imported"))
    lines += ["", "## Checks", "", "| Check | Targets | Status | Scope |", "|---|---|---|---|"]
    for c in report["checks"]:
        lines.append("| %s | %s | %s | %s |" % (c["id"], c["target"], c["status"], c["scope"]))
    lines += ["", "## Imported steps", ""]
    for c in report["cited_facts"]:
        br = " (%s)" % c["branch"] if c["branch"] else ""
        lines.append("- %s%s: %s. %s" % (c["target"], br, c["reason"], c["citation"]))
    cc = report["cross_check"]
    lines += ["", "## Cross-check", "", "- consistent with the classification: %s" % ("yes" if cc["ok"] else "no")]
    for t, s in cc["conditional_groups"].items():
        lines.append("- %s: %s" % (t, s))
    return "\n".join(lines) + "\n"
