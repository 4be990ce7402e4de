"""Standard forms (Borel, Cartan) and conjugation into them."""

from __future__ import annotations

from ..polyring.primes import factorint
from . import matrix as mx
from .group import DEFAULT_CEILING, FiniteMatrixGroup, gl2
from .matrix import Mat, Vec

CLASSES = ("borel", "split-cartan", "nonsplit-cartan", "normalizer-split")


def _prime_of(n: int) -> int:
    ps = list(factorint(n))
    if len(ps) != 1:
        raise ValueError("nonsplit Cartan needs a prime-power modulus, got %d" % n)
    return ps[0]


def nonsplit_parameter(n: int) -> int:
    """Least quadratic non-residue mod p (odd p); 1 for p = 2 (x^2 = x + 1)."""
    p = _prime_of(n)
    if p == 2:
        return 1
    return next(e for e in range(2, p) if pow(e, (p - 1) // 2, p) == p - 1)


def in_standard_form(g: Mat, kind: str, n: int) -> bool:
    a, b, c, d = g
    if kind == "borel":
        return c % n == 0
    if kind == "split-cartan":
        return b % n == 0 and c % n == 0
    if kind == "normalizer-split":
        return (b % n == 0 and c % n == 0) or (a % n == 0 and d % n == 0)
    if kind == "nonsplit-cartan":
        p = _prime_of(n)
        if p == 2:
            # a + b*w with w^2 = w + 1, acting on the basis (1, w)
            return b % n == c % n and (d - a - c) % n == 0
        return (d - a) % n == 0 and (b - nonsplit_parameter(n) * c) % n == 0
    raise ValueError("unknown class %r (expected one of %s)" % (kind, ", ".join(CLASSES)))


def _lines(n: int) -> list[Vec]:
    """One primitive generator for each cyclic submodule of order n."""
    seen: set = set()
    out = []
    units = mx.units(n)
    for v in mx.vectors_of_order(n, n):
        if v in seen:
            continue
        out.append(v)
        seen.update(((u * v[0]) % n, (u * v[1]) % n) for u in units)
    return out


def _eigenline(g: Mat, v: Vec, n: int) -> bool:
    w = mx.act(g, v, n)
    # w must be a multiple of v; v primitive so some coordinate is a unit
    for u in range(n):
        if ((u * v[0] - w[0]) % n, (u * v[1] - w[1]) % n) == (0, 0):
            return True
    return False


def _complete(v: Vec, n: int) -> Vec:
    for x in range(n):
        for y in range(n):
            if mx.is_invertible((v[0], x, v[1], y), n):
                return (x, y)
    raise ValueError("vector not primitive")


def conjugate_into(G: FiniteMatrixGroup, kind: str, ceiling: int = DEFAULT_CEILING) -> Mat | None:
    """T with T G T^-1 inside the standard form of `kind`, or None.

    Borel and split Cartan use common eigenlines (complete over Z/N since a
    basis vector of the standard form pulls back to a primitive eigenvector).
    Other classes fall back to a search over GL2(Z/N).
    """
    n = G.modulus
    gens = G.generators
    if all(in_standard_form(g, kind, n) for g in gens):
        return mx.identity(n)
    if kind in ("borel", "split-cartan"):
        common = [v for v in _lines(n) if all(_eigenline(g, v, n) for g in gens)]
        if kind == "borel":
            for v in common:
                w = _complete(v, n)
                return mx.inv((v[0], w[0], v[1], w[1]), n)
            return None
        for i, v in enumerate(common):
            for w in common[i + 1 :]:
                B = (v[0], w[0], v[1], w[1])
                if mx.is_invertible(B, n):
                    return mx.inv(B, n)
        return None
    amb = gl2(n).materialize(ceiling)
    for t in sorted(amb):
        if all(in_standard_form(mx.conj(t, g, n), kind, n) for g in gens):
            return t
    return None


def standard_group(kind: str, n: int) -> FiniteMatrixGroup:
    """The full standard subgroup of the given class (prime-power n for nonsplit)."""
    units = mx.units(n)
    if kind == "borel":
        gens = [(1, 1, 0, 1)] + [(u, 0, 0, 1) for u in units] + [(1, 0, 0, u) for u in units]
    elif kind == "split-cartan":
        gens = [(u, 0, 0, 1) for u in units] + [(1, 0, 0, u) for u in units]
    elif kind == "normalizer-split":
        gens = [(u, 0, 0, 1) for u in units] + [(1, 0, 0, u) for u in units] + [(0, 1, 1, 0)]
    elif kind == "nonsplit-cartan":
        amb = gl2(n).materialize()
        elems = frozenset(g for g in amb if in_standard_form(g, kind, n))
        return FiniteMatrixGroup(n, sorted(elems), elems, name="nonsplit Cartan mod %d" % n)
    elif kind == "full":
        return gl2(n)
    else:
        raise ValueError("unknown class %r" % kind)
    return FiniteMatrixGroup(n, [mx.reduce(g, n) for g in gens])


__all__ = ["CLASSES", "conjugate_into", "in_standard_form", "nonsplit_parameter", "standard_group"]
