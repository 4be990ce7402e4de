"""2x2 matrices over Z/NZ as plain tuples (a, b, c, d) for [[a, b], [c, d]]."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

Mat = tuple[int, int, int, int]
Vec = tuple[int, int]


def mul(x: Mat, y: Mat, n: int) -> Mat:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def det(x: Mat, n: int) -> int:
    return (x[0] * x[3] - x[1] * x[2]) % n


def inv(x: Mat, n: int) -> Mat:
    di = pow(det(x, n), -1, n)
    a, b, c, d = x
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def conj(t: Mat, x: Mat, n: int) -> Mat:
    """t x t^-1."""
    return mul(mul(t, x, n), inv(t, n), n)


def act(x: Mat, v: Vec, n: int) -> Vec:
    return ((x[0] * v[0] + x[1] * v[1]) % n, (x[2] * v[0] + x[3] * v[1]) % n)


def identity(n: int) -> Mat:
    return (1 % n, 0, 0, 1 % n)


def reduce(x: Mat, m: int) -> Mat:
    return tuple(e % m for e in x)  # type: ignore[return-value]


def power(x: Mat, k: int, n: int) -> Mat:
    r = identity(n)
    while k:
        if k & 1:
            r = mul(r, x, n)
        x = mul(x, x, n)
        k >>= 1
    return r


def element_order(x: Mat, n: int) -> int:
    e = identity(n)
    y, k = x, 1
    while y != e:
        y = mul(y, x, n)
        k += 1
    return k


def trace(x: Mat, n: int) -> int:
    return (x[0] + x[3]) % n


def is_invertible(x: Mat, n: int) -> bool:
    return gcd(det(x, n), n) == 1


def units(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1] if n > 1 else [0]


def gl2_order(n: int) -> int:
    from ..polyring.primes import factorint

    order = 1
    for p, e in factorint(n).items():
        order *= (p * p - 1) * (p * p - p) * p ** (4 * (e - 1))
    return order


def gl2_generators(n: int) -> list[Mat]:
    """Elementary matrices generate SL2(Z/n); diagonals diag(u, 1) add det."""
    gens = [(1, 1 % n, 0, 1), (1, 0, 1 % n, 1)]
    gens += [(u, 0, 0, 1) for u in units(n) if u != 1]
    return [reduce(g, n) for g in gens]


def vector_order(v: Vec, n: int) -> int:
    return n // gcd(gcd(v[0], v[1]), n)


def vectors_of_order(k: int, n: int) -> list[Vec]:
    return [(x, y) for x in range(n) for y in range(n) if vector_order((x, y), n) == k]


def parse_matrix(rows: Sequence[Sequence[int]], n: int) -> Mat:
    (a, b), (c, d) = rows
    return (a % n, b % n, c % n, d % n)


def to_rows(x: Mat) -> list[list[int]]:
    return [[x[0], x[1]], [x[2], x[3]]]


@dataclass(frozen=True)
class MatrixModN:
    modulus: int
    entries: Mat

    def __post_init__(self):
        object.__setattr__(self, "entries", reduce(self.entries, self.modulus))
        if not is_invertible(self.entries, self.modulus):
            raise ValueError("matrix %s is not invertible mod %d" % (to_rows(self.entries), self.modulus))

    def __mul__(self, other: "MatrixModN") -> "MatrixModN":
        return MatrixModN(self.modulus, mul(self.entries, other.entries, self.modulus))

    def inverse(self) -> "MatrixModN":
        return MatrixModN(self.modulus, inv(self.entries, self.modulus))

    @property
    def det(self) -> int:
        return det(self.entries, self.modulus)

    def to_json(self) -> list[list[int]]:
        return to_rows(self.entries)


@dataclass(frozen=True)
class TorsionVector:
    modulus: int
    components: Vec

    @property
    def order(self) -> int:
        return vector_order(self.components, self.modulus)


def sorted_mats(ms: Iterable[Mat]) -> list[Mat]:
    return sorted(ms)
