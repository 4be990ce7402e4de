"""Subgroup enumeration by cyclic extension.

Every subgroup U of a solvable group has a normal subgroup V of prime
index, so U = <V, g> with g normalizing V and g^p in V.  Starting from the
trivial group and extending class representatives layer by layer (layer k
holds the subgroups whose order has k prime factors) therefore reaches
every subgroup up to conjugacy.  For a non-solvable ambient the same
search still finds every solvable subgroup, which covers all subgroups of
order below 60.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Callable

from . import matrix as mx
from .group import (
    DEFAULT_CEILING,
    CeilingExceeded,
    FiniteMatrixGroup,
    canonical_generators,
    conjugacy_invariant,
    det_surjective,
    reduction,
)
from .matrix import Mat

SMALLEST_NONSOLVABLE = 60


def _normal_closure(elements_gens: list[Mat], ambient_gens, n: int) -> frozenset:
    """Smallest subgroup containing the given elements and normalized by ambient_gens."""
    gens = list(dict.fromkeys(elements_gens))
    while True:
        H = FiniteMatrixGroup(n, gens).elements
        new = []
        for t in ambient_gens:
            for h in list(FiniteMatrixGroup(n, gens).generators):
                c = mx.conj(t, h, n)
                if c not in H:
                    new.append(c)
        if not new:
            return H
        gens += new


def derived_subgroup(G: FiniteMatrixGroup) -> FiniteMatrixGroup:
    n = G.modulus
    comms = []
    gs = G.generators
    for a in gs:
        for b in gs:
            c = mx.mul(mx.mul(a, b, n), mx.mul(mx.inv(a, n), mx.inv(b, n), n), n)
            if c != mx.identity(n):
                comms.append(c)
    if not comms:
        return FiniteMatrixGroup(n, [])
    elems = _normal_closure(comms, gs, n)
    return FiniteMatrixGroup(n, sorted(elems), elems)


def is_solvable(G: FiniteMatrixGroup) -> bool:
    H = G
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def _class_ids(amb: frozenset, amb_gens, n: int) -> dict:
    ids: dict = {}
    k = 0
    for x in sorted(amb):
        if x in ids:
            continue
        ids[x] = k
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for t in amb_gens:
                z = mx.conj(t, y, n)
                if z not in ids:
                    ids[z] = k
                    queue.append(z)
        k += 1
    return ids


def _conjugate_in(G: frozenset, Ggens, H: frozenset, conj_elems, n: int) -> bool:
    for t in conj_elems:
        ti = mx.inv(t, n)
        if all(mx.mul(mx.mul(t, g, n), ti, n) in H for g in Ggens):
            return True
    return False


def _gens_of(U: frozenset, n: int) -> list[Mat]:
    gens: list[Mat] = []
    cur = frozenset([mx.identity(n)])
    for g in sorted(U):
        if g not in cur:
            gens.append(g)
            cur = FiniteMatrixGroup(n, gens).elements
            if len(cur) == len(U):
                break
    return gens


def _omega(k: int) -> int:
    c, p = 0, 2
    while k > 1:
        while k % p == 0:
            k //= p
            c += 1
        p += 1
    return c


def subgroups_up_to_conjugacy(
    ambient: FiniteMatrixGroup,
    order: int | None = None,
    max_order: int | None = None,
    require_det_surjective: bool = False,
    reduces_to: FiniteMatrixGroup | None = None,
    predicate: Callable[[FiniteMatrixGroup], bool] | None = None,
    conjugating: FiniteMatrixGroup | None = None,
    ceiling: int = DEFAULT_CEILING,
) -> list[FiniteMatrixGroup]:
    """All subgroups of ambient up to conjugacy (by `conjugating`, default ambient)
    passing the filters, sorted by (order, canonical generators).
    """
    n = ambient.modulus
    amb = ambient.materialize(ceiling)
    bound = order if order is not None else max_order
    if bound is None or bound >= SMALLEST_NONSOLVABLE:
        if not is_solvable(ambient):
            raise ValueError(
                "ambient of order %d is not solvable; give an order bound below %d"
                % (ambient.order, SMALLEST_NONSOLVABLE)
            )
    # layers are deduplicated under the ambient only; conjugation by a larger
    # group can move a subgroup outside the ambient, so it is applied afterwards
    celems = sorted(amb)
    ids = _class_ids(amb, ambient.generators, n)

    def invariant(U: frozenset):
        return (len(U), tuple(sorted(Counter(ids[g] for g in U).items())))

    identity = frozenset([mx.identity(n)])
    layer = [identity]
    everything = [identity]
    amb_sorted = sorted(amb)
    while layer:
        buckets: dict = {}
        nxt: list[frozenset] = []
        for V in layer:
            vgens = _gens_of(V, n)
            covered: set = set(V)
            for g in amb_sorted:
                if g in covered:
                    continue
                gi = mx.inv(g, n)
                if any(mx.mul(mx.mul(g, h, n), gi, n) not in V for h in vgens):
                    continue
                # order of g modulo V
                k, y = 1, g
                while y not in V:
                    y = mx.mul(y, g, n)
                    k += 1
                if _omega(k) != 1:
                    continue
                U = set()
                y = mx.identity(n)
                for _ in range(k):
                    U |= {mx.mul(y, v, n) for v in V}
                    y = mx.mul(y, g, n)
                U = frozenset(U)
                covered |= U
                if bound is not None and len(U) > bound:
                    continue
                if bound is not None and bound % len(U) and order is not None:
                    continue
                key = invariant(U)
                bucket = buckets.setdefault(key, [])
                ugens = _gens_of(U, n)
                if any(U == W or _conjugate_in(U, ugens, W, celems, n) for W in bucket):
                    continue
                bucket.append(U)
                nxt.append(U)
        everything.extend(nxt)
        layer = nxt
    out = []
    for U in everything:
        G = FiniteMatrixGroup(n, _gens_of(U, n), U)
        if order is not None and G.order != order:
            continue
        if max_order is not None and G.order > max_order:
            continue
        if require_det_surjective and not det_surjective(G):
            continue
        if reduces_to is not None and reduction(G, reduces_to.modulus).elements != reduces_to.elements:
            continue
        if predicate is not None and not predicate(G):
            continue
        out.append(G)
    if conjugating is not None:
        out = _dedupe(out, conjugating, ceiling)
    out.sort(key=lambda G: (G.order, canonical_generators(G)))
    return out


def _dedupe(groups: list[FiniteMatrixGroup], conjugating: FiniteMatrixGroup, ceiling: int) -> list[FiniteMatrixGroup]:
    n = conjugating.modulus
    celems = sorted(conjugating.materialize(ceiling))
    kept: dict = {}
    for G in groups:
        key = conjugacy_invariant(G)
        bucket = kept.setdefault(key, [])
        if any(_conjugate_in(G.elements, G.generators, H.elements, celems, n) for H in bucket):
            continue
        bucket.append(G)
    return [G for b in kept.values() for G in b]


def all_subgroups_bruteforce(ambient: FiniteMatrixGroup) -> set[frozenset]:
    """Every subgroup, as the set of closures of all subsets of generators drawn
    from the elements.  Only for tiny groups (used as a test oracle)."""
    n = ambient.modulus
    elems = sorted(ambient.elements)
    found = {frozenset([mx.identity(n)])}
    frontier = list(found)
    while frontier:
        new = []
        for H in frontier:
            for g in elems:
                if g in H:
                    continue
                U = FiniteMatrixGroup(n, _gens_of(H, n) + [g]).elements
                if U not in found:
                    found.add(U)
                    new.append(U)
        frontier = new
    return found


__all__ = [
    "CeilingExceeded",
    "all_subgroups_bruteforce",
    "derived_subgroup",
    "is_solvable",
    "subgroups_up_to_conjugacy",
]
