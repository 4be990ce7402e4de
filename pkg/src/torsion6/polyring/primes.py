"""Small-prime utilities.

Every prime the package actually uses is below a few thousand, so
deterministic Miller-Rabin with the first twelve prime bases is a proof.
"""

from __future__ import annotations

from math import isqrt

_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_from(start: int):
    """Primes >= start, ascending, forever."""
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


def factorint(n: int) -> dict[int, int]:
    """Trial-division factorization of a nonzero integer (sign dropped)."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor 0")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for r in (q, q + 2):
            while n % r == 0:
                out[r] = out.get(r, 0) + 1
                n //= r
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Positive divisors of |n|, ascending."""
    ds = [1]
    for q, e in factorint(n).items():
        ds = [d * q**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def squarefree_part(n: int) -> int:
    """The squarefree integer s with n = s * m^2 (sign kept)."""
    s = -1 if n < 0 else 1
    for q, e in factorint(n).items():
        if e % 2:
            s *= q
    return s


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n
