"""Subgroups of GL2(Z/p^2) with a prescribed reduction mod p, without materializing.

Let K = ker(GL2(Z/p^2) -> GL2(F_p)) = {I + pX}, an F_p-vector space isomorphic
to M2(F_p), on which H acts by conjugation.  A subgroup G reducing onto H is
determined by N = G meet K (an H-invariant subspace) and a choice of lifts
g_i = h_i^(I + p m_i) of the generators of H such that every Schreier word
of H evaluates into N.  Words are affine in m over F_p (products of two
p-multiples vanish), so the admissible m form an affine space.  Conjugating
by I + pX shifts m_i by h_i^-1 X h_i - X; those shifts and N^r are quotiented
out, leaving one G per K-conjugacy class.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import matrix as mx
from .group import FiniteMatrixGroup, det_image, lift_matrix
from .matrix import Mat


# -- linear algebra over F_p on row vectors (tuples) --------------------------


def rref(rows: list, p: int) -> list[list[int]]:
    m = [list(r) for r in rows]
    out = []
    col = 0
    width = len(m[0]) if m else 0
    while m and col < width:
        piv = next((r for r in m if r[col] % p), None)
        if piv is None:
            col += 1
            continue
        m.remove(piv)
        inv = pow(piv[col], -1, p)
        piv = [(x * inv) % p for x in piv]
        m = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in m]
        out = [[(a - r[col] * b) % p for a, b in zip(r, piv)] for r in out]
        out.append(piv)
        col += 1
    out = [r for r in out if any(r)]
    out.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return out


def nullspace(rows: list, width: int, p: int) -> list[list[int]]:
    R = rref(rows, p) if rows else []
    pivots = [next(i for i, x in enumerate(r) if x) for r in R]
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * width
        v[f] = 1
        for r, c in zip(R, pivots):
            v[c] = (-r[f]) % p
        basis.append(v)
    return basis


def solve_affine(A: list, b: list, width: int, p: int):
    """One solution of A x = b (or None) and a basis of the homogeneous solutions."""
    aug = [list(r) + [bi % p] for r, bi in zip(A, b)]
    R = rref(aug, p) if aug else []
    x = [0] * width
    for r in R:
        c = next(i for i, v in enumerate(r) if v)
        if c == width:
            return None, []
        x[c] = r[width]
    return x, nullspace(A, width, p)


@lru_cache(maxsize=None)
def all_subspaces(dim: int, p: int) -> tuple:
    """Every subspace of F_p^dim as a tuple of rref basis rows."""
    seen = {()}
    frontier = [()]
    vectors = [v for v in product(range(p), repeat=dim) if any(v)]
    while frontier:
        nxt = []
        for S in frontier:
            for v in vectors:
                T = tuple(tuple(r) for r in rref(list(S) + [v], p))
                if len(T) > len(S) and T not in seen:
                    seen.add(T)
                    nxt.append(T)
        frontier = nxt
    return tuple(sorted(seen, key=lambda S: (len(S), S)))


def _span_contains(S: list, v, p: int) -> bool:
    return len(rref(list(S) + [list(v)], p)) == len(rref(list(S), p)) if S else not any(v)


# -- the kernel K as M2(F_p) ---------------------------------------------------


def _kernel_coords(x: Mat, p: int) -> tuple:
    n = p * p
    idm = mx.identity(n)
    return tuple(((a - b) % n) // p for a, b in zip(x, idm))


def _from_coords(c, p: int) -> Mat:
    n = p * p
    return tuple((i + p * ci) % n for i, ci in zip(mx.identity(n), c))


def _conj_action(h: Mat, X, p: int) -> tuple:
    """h X h^-1 over F_p."""
    return mx.conj(h, tuple(X), p)


def invariant_subspaces(H: FiniteMatrixGroup, p: int) -> list[tuple]:
    gens = H.generators
    out = []
    for S in all_subspaces(4, p):
        if all(_span_contains(list(S), _conj_action(h, r, p), p) for h in gens for r in S):
            out.append(S)
    return out


# -- Schreier words -------------------------------------------------------------


def _schreier_words(H: FiniteMatrixGroup) -> list[list[tuple[int, int]]]:
    """Words (generator index, +-1) generating the relation subgroup of H."""
    p = H.modulus
    gens = H.generators
    e = mx.identity(p)
    word = {e: []}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for i, g in enumerate(gens):
            y = mx.mul(x, g, p)
            if y not in word:
                word[y] = word[x] + [(i, 1)]
                queue.append(y)
    out = []
    for x, w in word.items():
        for i, g in enumerate(gens):
            y = mx.mul(x, g, p)
            if word[y] == w + [(i, 1)]:
                continue  # tree edge, trivial generator
            out.append(w + [(i, 1)] + [(j, -k) for j, k in reversed(word[y])])
    return out


def _evaluate(word, mats: list[Mat], n: int) -> Mat:
    r = mx.identity(n)
    for i, k in word:
        r = mx.mul(r, mats[i] if k == 1 else mx.inv(mats[i], n), n)
    return r


@dataclass(frozen=True)
class LiftFamily:
    """All G with reduction H and G meet K = N, one per K-conjugacy class."""

    H: FiniteMatrixGroup
    N: tuple
    groups: tuple

    @property
    def order(self) -> int:
        return self.H.order * self.H.modulus ** len(self.N)


def lifts_with_kernel(H: FiniteMatrixGroup, N: tuple) -> list[FiniteMatrixGroup]:
    p = H.modulus
    n = p * p
    gens = H.generators
    r = len(gens)
    hats = [lift_matrix(h, p, n) for h in gens]
    width = 4 * r

    def lifted(m):
        return [mx.mul(hat, _from_coords(m[4 * i : 4 * i + 4], p), n) for i, hat in enumerate(hats)]

    words = _schreier_words(H)
    base = lifted([0] * width)
    unit = [lifted([1 if k == j else 0 for k in range(width)]) for j in range(width)]
    # annihilator of N: functionals vanishing on N
    ann = nullspace([list(v) for v in N], 4, p) if N else [[1 if i == j else 0 for i in range(4)] for j in range(4)]
    A, b = [], []
    for w in words:
        c0 = _kernel_coords(_evaluate(w, base, n), p)
        cols = []
        for j in range(width):
            cj = _kernel_coords(_evaluate(w, unit[j], n), p)
            cols.append([(x - y) % p for x, y in zip(cj, c0)])
        for f in ann:
            A.append([sum(fi * col[i] for i, fi in enumerate(f)) % p for col in cols])
            b.append((-sum(fi * c0[i] for i, fi in enumerate(f))) % p)
    x0, hom = solve_affine(A, b, width, p)
    if x0 is None:
        return []
    # quotient the homogeneous space by N^r and the coboundaries
    W = []
    for i in range(r):
        for v in N:
            row = [0] * width
            row[4 * i : 4 * i + 4] = v
            W.append(row)
    for j in range(4):
        X = [1 if k == j else 0 for k in range(4)]
        row = []
        for h in gens:
            hi = mx.inv(h, p)
            Y = mx.conj(hi, tuple(X), p)
            row += [(a - c) % p for a, c in zip(Y, X)]
        W.append(row)
    Wr = rref(W, p) if W else []
    reps = []
    cur = [list(v) for v in Wr]
    for v in hom:
        if not _span_contains(cur, v, p):
            reps.append(v)
            cur = rref(cur + [v], p)
    out = []
    kern = [_from_coords(v, p) for v in N]
    for coeffs in product(range(p), repeat=len(reps)):
        m = list(x0)
        for c, v in zip(coeffs, reps):
            m = [(a + c * e) % p for a, e in zip(m, v)]
        G = FiniteMatrixGroup(n, lifted(m) + kern, order=H.order * p ** len(N))
        out.append(G)
    return out


def lifts_of(H: FiniteMatrixGroup, det_surjective_only: bool = True) -> list[LiftFamily]:
    p = H.modulus
    fams = []
    for N in invariant_subspaces(H, p):
        gs = lifts_with_kernel(H, N)
        if det_surjective_only:
            gs = [G for G in gs if len(det_image(G)) == len(mx.units(p * p))]
        fams.append(LiftFamily(H, N, tuple(gs)))
    return fams


__all__ = [
    "LiftFamily",
    "all_subspaces",
    "invariant_subspaces",
    "lifts_of",
    "lifts_with_kernel",
    "nullspace",
    "rref",
    "solve_affine",
]
