"""Factorization over Q: the low-degree sieve, bounded recombination, and
splitting-field certificates.

The sieve works on degree patterns modulo small primes: an irreducible
factor of degree d over Q reduces mod every good prime p to a product of
modular irreducibles whose degrees sum to d.  When no d <= bound is a
subset sum at every sampled prime, there is no such factor.  Otherwise the
factorization at the cheapest prime is Hensel-lifted and every admissible
subset of small modular factors is trial-divided.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb, isqrt

from . import _zx
from .hensel import hensel_lift
from .integer import IntegerPolynomial, squarefree_part
from .modp import (
    ModPolynomial,
    degree_pattern,
    distinct_degree,
    is_squarefree_mod_p,
    small_factors_mod_p,
)
from .primes import primes_from

DEFAULT_SEED = 0xD1A150
SIEVE_PRIMES = 8
SIEVE_START = 101
PRIME_BUDGET = 25
FULL_FACTOR_CEILING = 64

NO_FACTOR_BELOW = "no-factor-below"
FACTOR_LIST = "factor-list"
MIXED_DEGREE_WITNESS = "mixed-degree-witness"


@dataclass(frozen=True)
class FactorCertificate:
    kind: str
    bound: int
    witness_primes: tuple[int, ...]
    seed: int
    factors: tuple[IntegerPolynomial, ...] = ()
    # prime -> {degree: count} of modular factors with degree <= bound
    patterns: dict = field(default_factory=dict)
    # recombination record, when the sieve alone did not settle it
    recombination: dict | None = None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "bound": self.bound,
            "witness_primes": list(self.witness_primes),
            "seed": self.seed,
            "factors": [g.to_json() for g in self.factors],
            "patterns": {
                str(p): {str(d): c for d, c in sorted(pat.items())}
                for p, pat in sorted(self.patterns.items())
            },
            "recombination": self.recombination,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "FactorCertificate":
        return cls(
            kind=d["kind"],
            bound=d["bound"],
            witness_primes=tuple(d["witness_primes"]),
            seed=d["seed"],
            factors=tuple(IntegerPolynomial(g) for g in d["factors"]),
            patterns={
                int(p): {int(k): v for k, v in pat.items()} for p, pat in d["patterns"].items()
            },
            recombination=d.get("recombination"),
        )

    @property
    def factor_degrees(self) -> list[int]:
        return sorted(g.degree for g in self.factors)


def subset_sums(pattern: dict[int, int], bound: int) -> set[int]:
    """Nonzero degrees <= bound reachable as sums of modular factor degrees."""
    reach = {0}
    for d, c in sorted(pattern.items()):
        for _ in range(min(c, bound // d)):
            reach |= {s + d for s in reach if s + d <= bound}
    reach.discard(0)
    return reach


def _count_subsets(pattern: dict[int, int], targets: set[int]) -> int:
    """Number of subsets of modular factors whose degrees sum into targets."""
    if not targets:
        return 0
    top = max(targets)
    ways = [0] * (top + 1)
    ways[0] = 1
    for d, c in sorted(pattern.items()):
        new = [0] * (top + 1)
        for s, w in enumerate(ways):
            if not w:
                continue
            for k in range(0, min(c, (top - s) // d) + 1):
                new[s + k * d] += w * comb(c, k)
        ways = new
    return sum(ways[t] for t in targets)


def good_primes(f: list[int], start: int = SIEVE_START):
    """Primes >= start not dividing lc(f) and modulo which f stays squarefree."""
    for p in primes_from(start):
        if f[-1] % p == 0:
            continue
        if is_squarefree_mod_p(ModPolynomial(f, p)):
            yield p


def mignotte_precision(f: list[int], degree: int, p: int) -> int:
    """Smallest e with p^e > 2 * C(d, d//2) * ||f||_2.

    This bounds the coefficients of lc(h)*g for any factorization f = g*h
    in Z[x] with deg g = d, which is what symmetric recovery needs.
    """
    norm = isqrt(sum(c * c for c in f)) + 1
    bound = 2 * comb(degree, degree // 2) * norm
    e, pe = 1, p
    while pe <= bound:
        e += 1
        pe *= p
    return e


def _check_squarefree(f: list[int]):
    # squarefree modulo a prime not dividing lc(f) implies squarefree over Q
    for p in primes_from(2):
        if p > 1000:
            break
        if f[-1] % p and is_squarefree_mod_p(ModPolynomial(f, p)):
            return
    if squarefree_part(IntegerPolynomial(f)).degree != len(f) - 1:
        raise ValueError("input is not squarefree")


def _subsets(indices, degs, size, targets, top):
    """Subsets of the given size whose degree sum lies in targets, pruned by sum."""
    out = []

    def rec(startpos, chosen, total):
        if len(chosen) == size:
            if total in targets:
                out.append(tuple(chosen))
            return
        for k in range(startpos, len(indices)):
            i = indices[k]
            if total + degs[i] > top:
                continue
            chosen.append(i)
            rec(k + 1, chosen, total + degs[i])
            chosen.pop()

    rec(0, [], 0)
    return out


def _recombine(f, small, lifted, targets, pe):
    """Trial-divide every admissible subset of lifted factors, smallest first.

    Returns (factors, candidates_tested).  Subsets are taken in order of
    size and factors already explained are removed, so each factor returned
    is irreducible.
    """
    lc = f[-1]
    c0 = f[0]
    lc_c0 = lc * c0
    remaining = list(range(len(small)))
    found = []
    tested = 0
    degs = [g.degree for g in small]
    top = max(targets)
    size = 1
    current = list(f)
    while size <= len(remaining):
        if sum(sorted(degs[i] for i in remaining)[:size]) > top:
            break
        hit = False
        for combo in _subsets(remaining, degs, size, targets, top):
            tested += 1
            prod = [lc % pe]
            for i in combo:
                prod = _zx.mul_mod(prod, list(lifted[i].coefficients), pe)
            cand = _zx.symmetric(prod, pe)
            # constant-term divisibility is nearly free and kills almost everything
            if c0 and (not cand or cand[0] == 0 or lc_c0 % cand[0]):
                continue
            g = _zx.primitive(cand)
            q = _zx.exact_quotient(current, g)
            if q is None:
                continue
            found.append(g)
            current = q
            remaining = [i for i in remaining if i not in combo]
            hit = True
            break
        if not hit:
            size += 1
    return found, tested


def low_degree_factors(
    f: IntegerPolynomial,
    bound: int,
    seed: int = DEFAULT_SEED,
    sieve_primes: int = SIEVE_PRIMES,
    prime_budget: int = PRIME_BUDGET,
    start: int = SIEVE_START,
) -> FactorCertificate:
    """Certify that f has no irreducible factor of degree <= bound over Q,
    or list all such factors.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    poly = _zx.primitive(list(f.coefficients))
    n = len(poly) - 1
    if bound >= n:
        factors = [g for g in full_factor(IntegerPolynomial(poly)) if g.degree <= bound]
        return FactorCertificate(FACTOR_LIST, bound, (), seed, tuple(factors), {}, {"method": "full"})
    _check_squarefree(poly)

    patterns: dict[int, dict[int, int]] = {}
    targets = set(range(1, bound + 1))
    used: list[int] = []
    for p in good_primes(poly, start):
        if len(used) >= prime_budget:
            break
        pat = degree_pattern(ModPolynomial(poly, p), bound)
        patterns[p] = pat
        used.append(p)
        targets &= subset_sums(pat, bound)
        if not targets:
            return FactorCertificate(NO_FACTOR_BELOW, bound, tuple(used), seed, (), patterns)
    # recombination at the prime with the fewest admissible subsets
    costs = {p: _count_subsets(pat, targets) for p, pat in patterns.items()}
    p = min(costs, key=lambda q: (costs[q], q))
    small, rest = small_factors_mod_p(ModPolynomial(poly, p), bound, seed)
    blocks = list(small)
    if rest.degree > 0:
        blocks.append(rest)
    e = mignotte_precision(poly, max(targets), p)
    lifted = hensel_lift(poly, blocks, e)[: len(small)]
    found, tested = _recombine(poly, small, lifted, targets, p**e)
    found.sort(key=lambda g: (len(g), g))
    record = {
        "prime": p,
        "precision": e,
        "targets": sorted(targets),
        "modular_factors": len(small),
        "candidates": costs[p],
        "tested": tested,
    }
    kind = FACTOR_LIST if found else NO_FACTOR_BELOW
    return FactorCertificate(
        kind, bound, tuple(used), seed, tuple(IntegerPolynomial(g) for g in found), patterns, record
    )


def full_factor(f: IntegerPolynomial, ceiling: int = FULL_FACTOR_CEILING, seed: int = DEFAULT_SEED) -> list[IntegerPolynomial]:
    """Irreducible factors over Q of the primitive part of f, with multiplicity.

    Products of the returned list equal the primitive part of f.
    """
    poly = _zx.primitive(list(f.coefficients))
    n = len(poly) - 1
    if n > ceiling:
        raise ValueError(
            "degree %d above full-factorization ceiling %d; use low_degree_factors" % (n, ceiling)
        )
    if n <= 0:
        return []
    out: list[list[int]] = []
    # split off repeated factors first
    rest = poly
    while len(rest) > 1:
        sf = squarefree_part(IntegerPolynomial(rest)).to_list()
        out.extend(_factor_squarefree(sf, seed))
        rest = _zx.exact_quotient(rest, sf)
    out.sort(key=lambda g: (len(g), g))
    return [IntegerPolynomial(g) for g in out]


def _factor_squarefree(poly: list[int], seed: int) -> list[list[int]]:
    n = len(poly) - 1
    if n == 1:
        return [poly]
    if poly[0] == 0:
        return [[0, 1]] + _factor_squarefree(poly[1:], seed) if len(poly) > 2 else [[0, 1]]
    p = next(good_primes(poly, 3))
    small, rest = small_factors_mod_p(ModPolynomial(poly, p), n, seed)
    if len(small) == 1:
        return [poly]
    half = n // 2
    e = mignotte_precision(poly, half, p)
    lifted = hensel_lift(poly, small, e)
    targets = set(range(1, half + 1))
    found, _ = _recombine(poly, small, lifted, targets, p**e)
    cof = poly
    for g in found:
        cof = _zx.exact_quotient(cof, g)
    if len(cof) > 1:
        found.append(_zx.primitive(cof))
    return found


def splitting_degree_exceeds(
    f: IntegerPolynomial, budget: int = PRIME_BUDGET, start: int = 3, check_irreducible: bool = True
) -> int | None:
    """A good prime where f factors into modular pieces of unequal degree, or None.

    For irreducible f of degree n, such a prime shows the splitting field is
    strictly larger than degree n: a Galois extension of degree n would make
    every unramified Frobenius act with cycles of a single length.
    """
    poly = _zx.primitive(list(f.coefficients))
    if check_irreducible and len(poly) - 1 <= FULL_FACTOR_CEILING:
        if len(full_factor(IntegerPolynomial(poly))) != 1:
            raise ValueError("input is reducible")
    tried = 0
    for p in good_primes(poly, start):
        if tried >= budget:
            return None
        tried += 1
        parts, _ = distinct_degree(ModPolynomial(poly, p).monic()._np(), p)
        if len(parts) > 1:
            return p
    return None


def splitting_certificate(f: IntegerPolynomial, budget: int = PRIME_BUDGET) -> FactorCertificate | None:
    p = splitting_degree_exceeds(f, budget)
    if p is None:
        return None
    pat = degree_pattern(ModPolynomial(f.coefficients, p))
    return FactorCertificate(MIXED_DEGREE_WITNESS, f.degree, (p,), 0, (f,), {p: pat})
