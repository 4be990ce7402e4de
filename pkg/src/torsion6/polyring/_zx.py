"""Dense integer-coefficient kernels.

Polynomials are lists of Python ints, lowest degree first, with no trailing
zeros (the zero polynomial is ``[]``).  Large products go through Kronecker
substitution on gmpy2 integers, which is what makes degree-2000 division
polynomials with thousand-digit coefficients tractable.
"""

from __future__ import annotations

from math import gcd

import gmpy2
from gmpy2 import mpz

KRONECKER_CUTOFF = 24


def trim(a: list[int]) -> list[int]:
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return trim(r)


def sub(a, b):
    r = list(a) + [0] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        r[i] -= c
    return trim(r)


def neg(a):
    return [-c for c in a]


def scale(a, c):
    if not c:
        return []
    return [c * x for x in a]


def _maxbits(a) -> int:
    return max((abs(int(x)).bit_length() for x in a), default=0)


def _pack(c, k):
    if len(c) == 1:
        return mpz(c[0])
    m = len(c) // 2
    return _pack(c[:m], k) + (_pack(c[m:], k) << (k * m))


def _unpack_signed(n, k, count, out):
    if count == 1:
        out.append(int(n))
        return
    m = count // 2
    mod = mpz(1) << (k * m)
    lo = gmpy2.f_mod(n, mod)
    if lo >= mod >> 1:
        lo -= mod
    _unpack_signed(lo, k, m, out)
    _unpack_signed((n - lo) >> (k * m), k, count - m, out)


def _unpack_unsigned(n, k, count, out):
    if count == 1:
        out.append(int(n))
        return
    m = count // 2
    lo = n & ((mpz(1) << (k * m)) - 1)
    _unpack_unsigned(lo, k, m, out)
    _unpack_unsigned(n >> (k * m), k, count - m, out)


def _schoolbook(a, b):
    r = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                r[i + j] += x * y
    return r


def mul(a, b):
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_CUTOFF:
        return trim(_schoolbook(a, b))
    k = _maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 2
    out: list[int] = []
    _unpack_signed(_pack(a, k) * _pack(b, k), k, len(a) + len(b) - 1, out)
    return trim(out)


def exact_quotient(a, b):
    """Return q with a == q*b, or None when b does not divide a in Z[x]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    n = len(a) - len(b) + 1
    if n <= 0:
        return None
    if a[-1] % b[-1] or (b[0] and a[0] % b[0]):
        return None
    if n < KRONECKER_CUTOFF or len(b) < KRONECKER_CUTOFF:
        q, r = pseudo_free_divmod(a, b)
        return q if q is not None and not r else None
    # a divisor of a in Z[x] has height <= 2^deg * ||a||_2
    k = _maxbits(a) + n + len(a).bit_length() + 4
    num, den = _pack(a, k), _pack(b, k)
    qv, rv = gmpy2.t_divmod(num, den)
    if rv:
        return None
    out: list[int] = []
    _unpack_signed(qv, k, n, out)
    q = trim(out)
    if mul(q, b) != list(a):
        return None
    return q


def pseudo_free_divmod(a, b):
    """Schoolbook division in Z[x]; (None, None) if a quotient coefficient is not integral."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if not c:
            continue
        qc, rem = divmod(c, lb)
        if rem:
            return None, None
        q[i - db] = qc
        for j in range(db + 1):
            r[i - db + j] -= qc * b[j]
    return trim(q), trim(r[:db])


def content(a) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a, x):
    r = 0
    for c in reversed(a):
        r = r * x + c
    return r


# --- arithmetic modulo an arbitrary positive integer m ---------------------

def reduce(a, m):
    return trim([c % m for c in a])


def symmetric(a, m):
    h = m // 2
    return trim([(c % m) - m if c % m > h else c % m for c in a])


def mul_mod(a, b, m):
    if not a or not b:
        return []
    if min(len(a), len(b)) < KRONECKER_CUTOFF:
        return trim([c % m for c in _schoolbook(a, b)])
    k = 2 * int(m).bit_length() + min(len(a), len(b)).bit_length() + 1
    prod = _pack([c % m for c in a], k) * _pack([c % m for c in b], k)
    out: list[int] = []
    _unpack_unsigned(prod, k, len(a) + len(b) - 1, out)
    return trim([c % m for c in out])


def _series_inverse(b, n, m):
    """Inverse of b (b[0] a unit mod m) as a power series mod (x^n, m)."""
    inv = [pow(b[0], -1, m)]
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        e = mul_mod(b[:prec], inv, m)[:prec]
        e = [(-c) % m for c in e] + [0] * (prec - len(e))
        e[0] = (e[0] + 2) % m
        inv = mul_mod(inv, e, m)[:prec]
    return inv


def divmod_mod(a, b, m):
    """Division by b (leading coefficient a unit mod m) in (Z/m)[x]."""
    a = reduce(a, m)
    b = reduce(b, m)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    n = len(a) - db
    if n < 2 * KRONECKER_CUTOFF:
        inv = pow(b[-1], -1, m)
        r = list(a)
        q = [0] * n
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i] * inv % m
            if c:
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] = (r[i - db + j] - c * b[j]) % m
        return trim(q), trim(r[:db])
    rb = b[::-1]
    rinv = _series_inverse(rb, n, m)
    ra = a[::-1]
    q = mul_mod(ra[:n], rinv, m)[:n]
    q = q + [0] * (n - len(q))
    q = trim(q[::-1])
    r = sub(a, mul_mod(q, b, m))
    return q, reduce(r[:db], m)
