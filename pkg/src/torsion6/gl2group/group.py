"""Finite subgroups of GL2(Z/NZ) given by generators."""

from __future__ import annotations

from collections import Counter, deque
from functools import lru_cache
from typing import Iterable, Sequence

from . import matrix as mx
from .matrix import Mat, Vec

DEFAULT_CEILING = 20000


class CeilingExceeded(RuntimeError):
    def __init__(self, order: int, ceiling: int):
        super().__init__("group order %d exceeds enumeration ceiling %d" % (order, ceiling))
        self.order = order
        self.ceiling = ceiling


def _closure(gens: Sequence[Mat], n: int, limit: int | None) -> frozenset:
    e = mx.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mx.mul(x, g, n)
            if y not in seen:
                seen.add(y)
                if limit is not None and len(seen) > limit:
                    raise CeilingExceeded(len(seen), limit)
                queue.append(y)
    return frozenset(seen)


class FiniteMatrixGroup:
    """A subgroup of GL2(Z/NZ).

    Elements are computed lazily by closure.  When the order is known in
    advance (full groups, preimages) it is stored without materializing.
    """

    def __init__(
        self,
        modulus: int,
        generators: Iterable[Mat],
        elements: frozenset | None = None,
        order: int | None = None,
        name: str | None = None,
    ):
        self.modulus = modulus
        gens = []
        for g in generators:
            g = mx.reduce(tuple(g), modulus)
            if not mx.is_invertible(g, modulus):
                raise ValueError("generator %s not invertible mod %d" % (mx.to_rows(g), modulus))
            if g != mx.identity(modulus) and g not in gens:
                gens.append(g)
        self.generators: tuple[Mat, ...] = tuple(gens)
        self._elements = elements
        self._order = order if elements is None else len(elements)
        self.name = name

    @property
    def elements(self) -> frozenset:
        if self._elements is None:
            self._elements = _closure(self.generators, self.modulus, None)
            self._order = len(self._elements)
        return self._elements

    def materialize(self, ceiling: int = DEFAULT_CEILING) -> frozenset:
        if self._elements is None:
            if self._order is not None and self._order > ceiling:
                raise CeilingExceeded(self._order, ceiling)
            self._elements = _closure(self.generators, self.modulus, ceiling)
            self._order = len(self._elements)
        return self._elements

    @property
    def order(self) -> int:
        if self._order is None:
            return len(self.elements)
        return self._order

    def __contains__(self, x: Mat) -> bool:
        return mx.reduce(tuple(x), self.modulus) in self.elements

    def __len__(self):
        return self.order

    def __eq__(self, other):
        if not isinstance(other, FiniteMatrixGroup):
            return NotImplemented
        return self.modulus == other.modulus and self.elements == other.elements

    def __hash__(self):
        return hash((self.modulus, self.elements))

    def __repr__(self):
        label = self.name or "group"
        return "<%s mod %d of order %d>" % (label, self.modulus, self.order)

    def is_abelian(self) -> bool:
        n = self.modulus
        gs = self.generators
        return all(mx.mul(a, b, n) == mx.mul(b, a, n) for a in gs for b in gs)

    def conjugate(self, t: Mat) -> "FiniteMatrixGroup":
        """t G t^-1."""
        n = self.modulus
        elems = None
        if self._elements is not None:
            ti = mx.inv(t, n)
            elems = frozenset(mx.mul(mx.mul(t, g, n), ti, n) for g in self._elements)
        return FiniteMatrixGroup(n, [mx.conj(t, g, n) for g in self.generators], elems, self._order)

    def is_subgroup_of(self, other: "FiniteMatrixGroup") -> bool:
        return all(g in other for g in self.generators)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "generators": [mx.to_rows(g) for g in canonical_generators(self)],
            "order": self.order,
        }


def canonical_generators(G: FiniteMatrixGroup) -> list[Mat]:
    """A deterministic generating set: greedy over the sorted element list."""
    n = G.modulus
    if G.order > DEFAULT_CEILING:
        return sorted(G.generators)
    gens: list[Mat] = []
    current = frozenset([mx.identity(n)])
    for g in sorted(G.elements):
        if g not in current:
            gens.append(g)
            current = _closure(gens, n, None)
            if len(current) == G.order:
                break
    return gens


def group_closure(generators: Iterable, modulus: int, ceiling: int | None = None) -> FiniteMatrixGroup:
    gens = [mx.reduce(tuple(_flat(g)), modulus) for g in generators]
    G = FiniteMatrixGroup(modulus, gens)
    if ceiling is not None:
        G.materialize(ceiling)
    else:
        G.elements
    return G


def _flat(g) -> Mat:
    if isinstance(g, mx.MatrixModN):
        return g.entries
    if len(g) == 2:
        return (g[0][0], g[0][1], g[1][0], g[1][1])
    return tuple(g)


def gl2(n: int) -> FiniteMatrixGroup:
    return FiniteMatrixGroup(n, mx.gl2_generators(n), order=mx.gl2_order(n), name="GL2(Z/%d)" % n)


def borel(n: int) -> FiniteMatrixGroup:
    gens = [(1, 1, 0, 1)] + [(u, 0, 0, 1) for u in mx.units(n)] + [(1, 0, 0, u) for u in mx.units(n)]
    us = len(mx.units(n))
    return FiniteMatrixGroup(n, gens, order=us * us * n, name="Borel mod %d" % n)


def det_image(G: FiniteMatrixGroup) -> frozenset:
    """The determinant image, generated inside the abelian group of units."""
    n = G.modulus
    dets = {mx.det(g, n) for g in G.generators}
    img = {1 % n}
    frontier = list(img)
    while frontier:
        x = frontier.pop()
        for d in dets:
            y = x * d % n
            if y not in img:
                img.add(y)
                frontier.append(y)
    return frozenset(img)


def det_surjective(G: FiniteMatrixGroup) -> bool:
    return len(det_image(G)) == len(mx.units(G.modulus))


@lru_cache(maxsize=None)
def _conjugacy_class(x: Mat, n: int) -> frozenset:
    gens = mx.gl2_generators(n)
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for t in gens:
            z = mx.conj(t, y, n)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return frozenset(seen)


def complex_conjugation_classes(n: int) -> frozenset:
    """All GL2(Z/n)-conjugates of [1,0;0,-1] and [1,1;0,-1]."""
    return _conjugacy_class((1 % n, 0, 0, (-1) % n), n) | _conjugacy_class(
        (1 % n, 1 % n, 0, (-1) % n), n
    )


def contains_complex_conjugation(G: FiniteMatrixGroup) -> bool:
    n = G.modulus
    cc = complex_conjugation_classes(n)
    # candidates are involutions of determinant -1
    return any(
        g in cc
        for g in G.elements
        if mx.det(g, n) == (-1) % n and mx.mul(g, g, n) == mx.identity(n)
    )


def orbit(G: FiniteMatrixGroup, v: Vec) -> frozenset:
    """Orbit of v, by breadth-first search over the generators only."""
    n = G.modulus
    v = (v[0] % n, v[1] % n)
    seen = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for g in G.generators:
            u = mx.act(g, w, n)
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return frozenset(seen)


def vector_orbit(G: FiniteMatrixGroup, v: Vec) -> tuple[frozenset, int]:
    """(orbit, stabilizer index); the index equals the orbit size."""
    o = orbit(G, v)
    return o, len(o)


def stabilizer(G: FiniteMatrixGroup, v: Vec) -> FiniteMatrixGroup:
    n = G.modulus
    v = (v[0] % n, v[1] % n)
    elems = frozenset(g for g in G.elements if mx.act(g, v, n) == v)
    return FiniteMatrixGroup(n, sorted(elems), elems)


def orbits_of_order(G: FiniteMatrixGroup, k: int) -> list[frozenset]:
    """Partition of the vectors of exact order k into G-orbits."""
    n = G.modulus
    rest = set(mx.vectors_of_order(k, n))
    out = []
    while rest:
        v = min(rest)
        o = orbit(G, v)
        out.append(o)
        rest -= o
    return out


def reduction(G: FiniteMatrixGroup, m: int) -> FiniteMatrixGroup:
    n = G.modulus
    if n % m:
        raise ValueError("%d does not divide %d" % (m, n))
    return FiniteMatrixGroup(m, [mx.reduce(g, m) for g in G.generators])


def kernel_generators(m: int, n: int) -> list[Mat]:
    """Generators I + m*E_ij of ker(GL2(Z/n) -> GL2(Z/m)).

    Valid when every prime dividing n/m also divides m, which is the only
    case used here (n = p^k, m = p^j): the kernel is then generated by
    elementary perturbations.
    """
    if n % m:
        raise ValueError("%d does not divide %d" % (m, n))
    if m == 1:
        return mx.gl2_generators(n)
    from ..polyring.primes import factorint

    if n != m and any(m % p for p in factorint(n // m)):
        raise ValueError("kernel generators need every prime of n/m to divide m")
    gens = []
    for k in range(4):
        e = [0, 0, 0, 0]
        e[k] = m
        g = mx.reduce(tuple(x + y for x, y in zip(mx.identity(n), e)), n)
        if g != mx.identity(n):
            gens.append(g)
    return gens


def kernel_order(m: int, n: int) -> int:
    return mx.gl2_order(n) // mx.gl2_order(m) if m > 1 else mx.gl2_order(n)


def lift_matrix(x: Mat, m: int, n: int) -> Mat:
    """Some matrix mod n reducing to x and invertible mod n."""
    for shift in range(n // m):
        y = mx.reduce((x[0] + m * shift, x[1], x[2], x[3]), n)
        if mx.is_invertible(y, n):
            return y
    raise ValueError("no invertible lift")


def preimage_full(H: FiniteMatrixGroup, n: int) -> FiniteMatrixGroup:
    m = H.modulus
    if n % m:
        raise ValueError("%d does not divide %d" % (m, n))
    gens = [lift_matrix(g, m, n) for g in H.generators] + kernel_generators(m, n)
    return FiniteMatrixGroup(n, gens, order=H.order * kernel_order(m, n))


def element_order_census(G: FiniteMatrixGroup) -> dict[int, int]:
    n = G.modulus
    return dict(sorted(Counter(mx.element_order(g, n) for g in G.elements).items()))


def conjugacy_invariant(G: FiniteMatrixGroup) -> tuple:
    """Invariant under GL2-conjugation: order plus (order, det, trace) census."""
    n = G.modulus
    c = Counter((mx.element_order(g, n), mx.det(g, n), mx.trace(g, n)) for g in G.elements)
    return (G.order, tuple(sorted(c.items())))


def are_conjugate(
    G: FiniteMatrixGroup, H: FiniteMatrixGroup, within: FiniteMatrixGroup | None = None
) -> Mat | None:
    """Some t (in `within`, default GL2) with t G t^-1 = H, else None."""
    n = G.modulus
    if G.order != H.order:
        return None
    amb = within if within is not None else gl2(n)
    helem = H.elements
    for t in sorted(amb.elements):
        ti = mx.inv(t, n)
        if all(mx.mul(mx.mul(t, g, n), ti, n) in helem for g in G.generators):
            return t
    return None
