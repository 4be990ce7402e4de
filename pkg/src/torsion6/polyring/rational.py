"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from . import _zx
from .primes import divisors

Number = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (tuple, list)):
        return Fraction(int(c[0]), int(c[1]))
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError("not an exact rational: %r" % (c,))


class RationalPolynomial:
    """Immutable polynomial over Q, coefficients lowest degree first.

    The zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coefficients", "_hash")

    def __init__(self, coefficients: Iterable = ()):
        cs = [_frac(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # construction helpers
    @classmethod
    def x(cls) -> "RationalPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, c) -> "RationalPolynomial":
        return cls([c])

    @classmethod
    def from_integer_list(cls, cs: Sequence[int]) -> "RationalPolynomial":
        return cls([Fraction(int(c)) for c in cs])

    @classmethod
    def coerce(cls, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return cls([other])
        raise TypeError("cannot coerce %r to a polynomial" % (other,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coefficients)
        return self._hash

    def __repr__(self):
        return "RationalPolynomial(%s)" % self.to_text()

    def __str__(self):
        return self.to_text()

    # arithmetic
    def __add__(self, other):
        other = RationalPolynomial.coerce(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return RationalPolynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial([-c for c in self.coefficients])

    def __sub__(self, other):
        return self + (-RationalPolynomial.coerce(other))

    def __rsub__(self, other):
        return RationalPolynomial.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial([c * other for c in self.coefficients])
        other = RationalPolynomial.coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        da, na = self.integer_form()
        db, nb = other.integer_form()
        return RationalPolynomial(
            [Fraction(c, da * db) for c in _zx.mul(na, nb)]
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = RationalPolynomial([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        other = RationalPolynomial.coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coefficients)
        db = other.degree
        lb = other.leading()
        if len(r) - 1 < db:
            return RationalPolynomial(), self
        q = [Fraction(0)] * (len(r) - db)
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i] / lb
            if c:
                q[i - db] = c
                for j, bj in enumerate(other.coefficients):
                    r[i - db + j] -= c * bj
        return RationalPolynomial(q), RationalPolynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "RationalPolynomial":
        """Quotient, raising ArithmeticError if the division leaves a remainder."""
        other = RationalPolynomial.coerce(other)
        da, na = self.integer_form()
        db, nb = other.integer_form()
        # self/other = (na/da)/(nb/db); divide primitive parts over Z
        ca, cb = _zx.content(na) or 1, _zx.content(nb)
        pa, pb = [c // ca for c in na], [c // cb for c in nb]
        if pb and pb[-1] < 0:
            pb = _zx.neg(pb)
            cb = -cb
        q = _zx.exact_quotient(pa, pb) if pa else []
        if q is None:
            # Gauss: primitive pb | pa in Q[x] iff it does in Z[x]
            raise ArithmeticError("inexact polynomial division")
        scale = Fraction(ca, da) / Fraction(cb, db)
        return RationalPolynomial([c * scale for c in q])

    def __call__(self, x):
        r = 0
        for c in reversed(self.coefficients):
            r = r * x + c
        return r

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        r = RationalPolynomial()
        for c in reversed(self.coefficients):
            r = r * inner + c
        return r

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial([i * c for i, c in enumerate(self.coefficients)][1:])

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        lc = self.leading()
        return RationalPolynomial([c / lc for c in self.coefficients])

    def integer_form(self) -> tuple[int, list[int]]:
        """(d, cs) with self = cs / d, cs integers, d > 0 the common denominator."""
        d = 1
        for c in self.coefficients:
            d = lcm(d, c.denominator)
        return d, [c.numerator * (d // c.denominator) for c in self.coefficients]

    def primitive_integer(self) -> list[int]:
        """The primitive integer polynomial with positive leading coefficient proportional to self."""
        return _zx.primitive(self.integer_form()[1])

    # serialization
    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            s = str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)
            if i == 0:
                terms.append(s)
            elif i == 1:
                terms.append("%s*x" % s)
            else:
                terms.append("%s*x^%d" % (s, i))
        return " + ".join(terms)

    _TERM = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*(?:\*\s*x\s*(?:\^\s*(\d+))?)?\s*$")

    @classmethod
    def from_text(cls, text: str) -> "RationalPolynomial":
        text = text.strip()
        if text == "0":
            return cls()
        coeffs: dict[int, Fraction] = {}
        for term in text.split(" + "):
            m = cls._TERM.match(term)
            if not m:
                raise ValueError("malformed term %r" % term)
            c = Fraction(m.group(1))
            if "x" in term:
                e = int(m.group(2)) if m.group(2) else 1
            else:
                e = 0
            coeffs[e] = coeffs.get(e, Fraction(0)) + c
        n = max(coeffs) + 1 if coeffs else 0
        return cls([coeffs.get(i, 0) for i in range(n)])

    def to_json(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coefficients]

    @classmethod
    def from_json(cls, data) -> "RationalPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([Fraction(int(n), int(d)) for n, d in data])


def poly_gcd(f: RationalPolynomial, g: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd over Q; gcd(0, 0) = 0."""
    # Euclid on primitive integer parts keeps the rationals small
    a = _zx.primitive(f.integer_form()[1]) if not f.is_zero() else []
    b = _zx.primitive(g.integer_form()[1]) if not g.is_zero() else []
    while b:
        r = list(a)
        db = len(b) - 1
        lb = b[-1]
        while len(r) - 1 >= db and r:
            c = r[-1]
            shift = len(r) - 1 - db
            r = [x * lb for x in r]
            for j in range(len(b)):
                r[shift + j] -= c * b[j]
            r = _zx.trim(r)
        a, b = b, _zx.primitive(r) if r else []
    return RationalPolynomial.from_integer_list(a).monic()


def rational_roots(f: RationalPolynomial) -> set[Fraction]:
    """All rational roots, by the rational root theorem."""
    if f.is_zero():
        raise ValueError("zero polynomial has every rational as a root")
    cs = f.primitive_integer()
    roots: set[Fraction] = set()
    # strip the factor x^k first so the constant term is nonzero
    k = 0
    while cs[k] == 0:
        k += 1
    if k:
        roots.add(Fraction(0))
        cs = cs[k:]
    if len(cs) == 1:
        return roots
    for q in divisors(cs[-1]):
        for p in divisors(cs[0]):
            for s in (p, -p):
                # Horner on the cleared form: sum c_i s^i q^(n-i)
                n = len(cs) - 1
                acc = cs[n]
                for i in range(n - 1, -1, -1):
                    acc = acc * s + cs[i] * q ** (n - i)
                if acc == 0:
                    roots.add(Fraction(s, q))
    return roots


def poly_identity_check(lhs, rhs) -> bool:
    """True iff the two expanded polynomials agree coefficientwise."""
    return RationalPolynomial.coerce(lhs) == RationalPolynomial.coerce(rhs)
