"""Integer polynomials, the factorization substrate."""

from __future__ import annotations

from functools import cached_property
from typing import Iterable

from . import _zx
from .modp import ModPolynomial
from .rational import RationalPolynomial


class IntegerPolynomial:
    """Immutable polynomial over Z, coefficients lowest degree first."""

    def __init__(self, coefficients: Iterable[int] = ()):
        self.coefficients: tuple[int, ...] = tuple(_zx.trim([int(c) for c in coefficients]))

    @classmethod
    def from_rational(cls, f: RationalPolynomial) -> "IntegerPolynomial":
        """Primitive integer multiple of f with positive leading coefficient."""
        return cls(f.primitive_integer())

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @cached_property
    def content(self) -> int:
        return _zx.content(self.coefficients)

    def primitive_part(self) -> "IntegerPolynomial":
        return IntegerPolynomial(_zx.primitive(list(self.coefficients)))

    def leading(self) -> int:
        return self.coefficients[-1] if self.coefficients else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    def to_rational(self) -> RationalPolynomial:
        return RationalPolynomial.from_integer_list(self.coefficients)

    def mod(self, m: int) -> ModPolynomial:
        return ModPolynomial(self.coefficients, m)

    def __eq__(self, other):
        if not isinstance(other, IntegerPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(_zx.mul(list(self.coefficients), list(other.coefficients)))

    def __call__(self, x):
        return _zx.evaluate(self.coefficients, x)

    def exact_quotient(self, other: "IntegerPolynomial") -> "IntegerPolynomial | None":
        q = _zx.exact_quotient(list(self.coefficients), list(other.coefficients))
        return None if q is None else IntegerPolynomial(q)

    def norm2_squared(self) -> int:
        return sum(c * c for c in self.coefficients)

    def __repr__(self):
        return "IntegerPolynomial(%s)" % self.to_rational().to_text()

    def to_json(self) -> list[int]:
        return [int(c) for c in self.coefficients]


def squarefree_part(f: IntegerPolynomial) -> IntegerPolynomial:
    """Primitive squarefree part f / gcd(f, f')."""
    from .rational import poly_gcd

    r = f.to_rational()
    g = poly_gcd(r, r.derivative())
    if g.degree <= 0:
        return f.primitive_part()
    return IntegerPolynomial.from_rational(r.exact_div(g))
