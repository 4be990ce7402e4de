"""Small abstract groups as permutation groups, with iso-class identification.

Identification compares an invariant tuple (order, abelian flag, element-order
census, centre order, derived subgroup order) against a catalogue of groups
built here from explicit permutations.  Catalogue entries are restricted to
orders where that tuple pins down the group; anything else is reported by
its invariants only.
"""

from __future__ import annotations

from collections import Counter, deque
from functools import lru_cache

from ..polyring.primes import factorint
from . import matrix as mx
from .group import FiniteMatrixGroup, orbit

Perm = tuple[int, ...]


def pmul(x: Perm, y: Perm) -> Perm:
    """x after y (apply y first)."""
    return tuple(x[i] for i in y)


def pinv(x: Perm) -> Perm:
    out = [0] * len(x)
    for i, j in enumerate(x):
        out[j] = i
    return tuple(out)


class AbstractGroup:
    """A finite permutation group on range(degree), elements materialized."""

    def __init__(self, degree: int, generators, elements: frozenset | None = None):
        self.degree = degree
        e = tuple(range(degree))
        self.identity = e
        self.generators = tuple(g for g in dict.fromkeys(tuple(g) for g in generators) if g != e)
        if elements is None:
            seen = {e}
            queue = deque([e])
            while queue:
                x = queue.popleft()
                for g in self.generators:
                    y = pmul(x, g)
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            elements = frozenset(seen)
        self.elements = elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return "<AbstractGroup %s>" % self.identify()

    def subgroup(self, gens) -> "AbstractGroup":
        return AbstractGroup(self.degree, gens)

    def element_order(self, x: Perm) -> int:
        y, k = x, 1
        while y != self.identity:
            y = pmul(y, x)
            k += 1
        return k

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(pmul(a, b) == pmul(b, a) for a in gs for b in gs)

    def census(self) -> dict[int, int]:
        return dict(sorted(Counter(self.element_order(x) for x in self.elements).items()))

    def exponent(self) -> int:
        from math import lcm

        out = 1
        for k in self.census():
            out = lcm(out, k)
        return out

    def center(self) -> "AbstractGroup":
        gs = self.generators
        z = [x for x in self.elements if all(pmul(x, g) == pmul(g, x) for g in gs)]
        return AbstractGroup(self.degree, z, frozenset(z))

    def is_normal(self, H: "AbstractGroup") -> bool:
        return all(pmul(pmul(g, h), pinv(g)) in H.elements for g in self.generators for h in H.generators)

    def normal_closure(self, xs) -> "AbstractGroup":
        gens = list(xs)
        while True:
            H = AbstractGroup(self.degree, gens)
            new = [
                c
                for g in self.generators
                for h in H.generators
                if (c := pmul(pmul(g, h), pinv(g))) not in H.elements
            ]
            if not new:
                return H
            gens += new

    def derived_subgroup(self) -> "AbstractGroup":
        gs = self.generators
        comms = [pmul(pmul(a, b), pmul(pinv(a), pinv(b))) for a in gs for b in gs]
        return self.normal_closure([c for c in comms if c != self.identity])

    def derived_length(self) -> int | None:
        """None for non-solvable groups."""
        H, k = self, 0
        while H.order > 1:
            D = H.derived_subgroup()
            if D.order == H.order:
                return None
            H, k = D, k + 1
        return k

    def sylow(self, p: int) -> "AbstractGroup":
        """A maximal p-subgroup grown greedily; maximal p-subgroups are Sylow."""
        P = AbstractGroup(self.degree, [])
        for x in sorted(self.elements):
            if x in P.elements or set(factorint(self.element_order(x))) != {p}:
                continue
            Q = AbstractGroup(self.degree, P.generators + (x,))
            if set(factorint(Q.order)) == {p}:
                P = Q
        return P

    def is_supersolvable(self) -> bool:
        """Grow a G-normal series with prime-order factors greedily.

        Every quotient of a supersolvable group has a normal subgroup of
        prime order, so the greedy search never gets stuck on one.
        """
        M = AbstractGroup(self.degree, [])
        while M.order < self.order:
            for x in sorted(self.elements):
                if x in M.elements:
                    continue
                U = AbstractGroup(self.degree, M.generators + (x,))
                idx = U.order // M.order
                if len(factorint(idx)) == 1 and sum(factorint(idx).values()) == 1 and self.is_normal(U):
                    M = U
                    break
            else:
                return False
        return True

    def quotient(self, N: "AbstractGroup") -> "AbstractGroup":
        """G/N via the action on cosets of N."""
        cosets: list[frozenset] = []
        index: dict = {}
        for x in sorted(self.elements):
            if x in index:
                continue
            c = frozenset(pmul(x, n) for n in N.elements)
            for y in c:
                index[y] = len(cosets)
            cosets.append(c)
        reps = [min(c) for c in cosets]
        gens = [tuple(index[pmul(g, r)] for r in reps) for g in self.generators]
        return AbstractGroup(len(cosets), gens)

    def invariants(self) -> tuple:
        return (
            self.order,
            self.is_abelian(),
            tuple(self.census().items()),
            self.center().order,
            self.derived_subgroup().order,
        )

    def identify(self) -> str:
        if self.is_abelian():
            return abelian_name(self.census())
        name = _catalogue().get(self.invariants())
        if name is not None:
            return name
        return "unidentified%s" % (self.invariants(),)

    def to_json(self) -> dict:
        inv = self.invariants()
        return {
            "name": self.identify(),
            "order": inv[0],
            "abelian": inv[1],
            "element_orders": {str(k): v for k, v in inv[2]},
        }


def abelian_name(census: dict[int, int]) -> str:
    """Invariant factors of a finite abelian group from its element-order census."""
    order = sum(census.values())
    if order == 1:
        return "C1"
    parts: list[list[int]] = []
    for p, e in factorint(order).items():
        # n_k = log_p #{x : x^(p^k) = 1}
        ranks = []
        for k in range(1, e + 1):
            cnt = sum(c for o, c in census.items() if (p**k) % o == 0)
            ranks.append(_log(cnt, p))
        prev, lam = 0, []
        for k, r in enumerate(ranks, 1):
            lam.append(r - prev)
            prev = r
        # lam[k-1] = number of cyclic factors of order >= p^k
        sizes = []
        for k in range(len(lam)):
            nxt = lam[k + 1] if k + 1 < len(lam) else 0
            sizes += [p ** (k + 1)] * (lam[k] - nxt)
        parts.append(sorted(sizes, reverse=True))
    width = max(len(s) for s in parts)
    factors = [1] * width
    for s in parts:
        for i, q in enumerate(s):
            factors[i] *= q
    factors.sort()
    return " x ".join("C%d" % f for f in factors)


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def _direct(G: AbstractGroup, H: AbstractGroup) -> AbstractGroup:
    m, n = G.degree, H.degree
    gens = [g + tuple(m + i for i in range(n)) for g in G.generators]
    gens += [tuple(range(m)) + tuple(m + i for i in h) for h in H.generators]
    return AbstractGroup(m + n, gens)


def cyclic(n: int) -> AbstractGroup:
    return AbstractGroup(n, [tuple((i + 1) % n for i in range(n))])


def dihedral(n: int) -> AbstractGroup:
    """Symmetries of the n-gon, order 2n."""
    return AbstractGroup(n, [tuple((i + 1) % n for i in range(n)), tuple((-i) % n for i in range(n))])


def symmetric(n: int) -> AbstractGroup:
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])] if n > 1 else []
    return AbstractGroup(n, gens)


def alternating(n: int) -> AbstractGroup:
    return AbstractGroup(n, [tuple(p) for p in _alt_gens(n)])


def _alt_gens(n: int):
    # 3-cycles (0 1 k) generate A_n
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        yield p


def _from_table(order: int, mul) -> AbstractGroup:
    """Regular representation of a group given by a multiplication function on range(order)."""
    gens = [tuple(mul(g, x) for x in range(order)) for g in range(order)]
    return AbstractGroup(order, gens)


def quaternion() -> AbstractGroup:
    # unit quaternions +-1, +-i, +-j, +-k encoded 0..7 as (sign, unit)
    units = ["1", "i", "j", "k"]
    table = {
        ("1", u): (1, u) for u in units
    }
    for u in units:
        table[(u, "1")] = (1, u)
    table.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })

    def mul(a, b):
        sa, ua = (1 if a < 4 else -1), units[a % 4]
        sb, ub = (1 if b < 4 else -1), units[b % 4]
        s, u = table[(ua, ub)]
        s *= sa * sb
        return units.index(u) + (0 if s == 1 else 4)

    return _from_table(8, mul)


def dicyclic3() -> AbstractGroup:
    """C3 x| C4, order 12: elements a^i b^j, b a b^-1 = a^-1, b^2 central of order 2."""

    def mul(x, y):
        i1, j1 = divmod(x, 4)
        i2, j2 = divmod(y, 4)
        i = (i1 + (i2 if j1 % 2 == 0 else -i2)) % 3
        return i * 4 + (j1 + j2) % 4

    return _from_table(12, mul)


def generalized_dihedral_c3c3() -> AbstractGroup:
    """(C3 x C3) x| C2 with inversion."""

    def mul(x, y):
        a1, b1, s1 = x // 6, (x // 2) % 3, x % 2
        a2, b2, s2 = y // 6, (y // 2) % 3, y % 2
        if s1:
            a2, b2 = -a2, -b2
        return ((a1 + a2) % 3) * 6 + ((b1 + b2) % 3) * 2 + (s1 + s2) % 2

    return _from_table(18, mul)


@lru_cache(maxsize=1)
def _catalogue() -> dict:
    S3 = symmetric(3)
    entries = {
        "S3": S3,
        "D4": dihedral(4),
        "Q8": quaternion(),
        "D5": dihedral(5),
        "A4": alternating(4),
        "D6": dihedral(6),
        "Dic3": dicyclic3(),
        "D7": dihedral(7),
        "D9": dihedral(9),
        "S3 x C3": _direct(S3, cyclic(3)),
        "C3^2 : C2": generalized_dihedral_c3c3(),
        "D10": dihedral(10),
        "S4": symmetric(4),
        "S3 x C6": _direct(S3, cyclic(6)),
        "S3 x S3": _direct(S3, S3),
        "A5": alternating(5),
    }
    out = {}
    for name, G in entries.items():
        out[G.invariants()] = name
    return out


def catalogue_names() -> list[str]:
    return sorted(_catalogue().values())


def from_matrix_group(G: FiniteMatrixGroup) -> AbstractGroup:
    """Faithful permutation representation on all of (Z/N)^2."""
    n = G.modulus
    vecs = [(x, y) for x in range(n) for y in range(n)]
    pos = {v: i for i, v in enumerate(vecs)}
    gens = [tuple(pos[mx.act(g, v, n)] for v in vecs) for g in G.generators]
    return AbstractGroup(len(vecs), gens)


def closure_quotient(G: FiniteMatrixGroup, v) -> AbstractGroup:
    """G / core(G_v), realized as the permutation image of G on the orbit of v."""
    n = G.modulus
    pts = sorted(orbit(G, v))
    pos = {w: i for i, w in enumerate(pts)}
    gens = [tuple(pos[mx.act(g, w, n)] for w in pts) for g in G.generators]
    return AbstractGroup(len(pts), gens)


def is_generalized_s3_type(G: AbstractGroup) -> bool:
    """Supersolvable, abelian Sylow subgroups, exponent dividing 6."""
    if G.order > 10**4:
        raise ValueError("group order %d above the supported bound" % G.order)
    if 6 % G.exponent():
        return False
    if any(not G.sylow(p).is_abelian() for p in factorint(G.order)):
        return False
    return G.is_supersolvable()


def all_subgroups(G: AbstractGroup) -> list[AbstractGroup]:
    """Every subgroup of a small group, grown one element at a time."""
    found = {frozenset([G.identity]): AbstractGroup(G.degree, [])}
    frontier = list(found.values())
    while frontier:
        nxt = []
        for H in frontier:
            for x in sorted(G.elements):
                if x in H.elements:
                    continue
                U = AbstractGroup(G.degree, H.generators + (x,))
                if U.elements not in found:
                    found[U.elements] = U
                    nxt.append(U)
        frontier = nxt
    return list(found.values())


def from_permutations(perms) -> AbstractGroup:
    perms = [tuple(p) for p in perms]
    degree = len(perms[0]) if perms else 1
    return AbstractGroup(degree, perms)


__all__ = [
    "AbstractGroup",
    "abelian_name",
    "all_subgroups",
    "alternating",
    "catalogue_names",
    "closure_quotient",
    "cyclic",
    "dihedral",
    "from_matrix_group",
    "from_permutations",
    "is_generalized_s3_type",
    "quaternion",
    "symmetric",
]
