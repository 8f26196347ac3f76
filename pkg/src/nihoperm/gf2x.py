"""Polynomials over GF(2) packed into Python ints (bit i is the coefficient of x^i).

Also holds the two small integer helpers the field code needs: trial-division
factoring and the smallest irreducible of a given degree.
"""

from __future__ import annotations

from functools import lru_cache


def degree(p: int) -> int:
    """Degree of p; -1 for the zero polynomial."""
    return p.bit_length() - 1


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def divmod2(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by the zero polynomial")
    db = degree(b)
    q = 0
    while True:
        shift = degree(a) - db
        if shift < 0:
            return q, a
        q |= 1 << shift
        a ^= b << shift


def mod(a: int, b: int) -> int:
    return divmod2(a, b)[1]


def gcd(a: int, b: int) -> int:
    while b:
        a, b = b, mod(a, b)
    return a


def mulmod(a: int, b: int, f: int) -> int:
    return mod(clmul(a, b), f)


def is_irreducible(f: int) -> bool:
    """Irreducibility over GF(2) via the gcd(f, x^(2^i) - x) ladder.

    f of degree k is irreducible iff gcd(f, x^(2^i) + x) = 1 for 1 <= i <= k/2.
    """
    k = degree(f)
    if k < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    if k == 1:
        return True
    x = 0b10
    h = x
    for _ in range(k // 2):
        h = mulmod(h, h, f)
        if gcd(f, h ^ x) != 1:
            return False
    return True


def is_irreducible_trial(f: int) -> bool:
    """Irreducibility by exhaustive trial division with every d of degree 1..k/2."""
    k = degree(f)
    if k < 1:
        raise ValueError("irreducibility is defined for degree >= 1")
    for dd in range(1, k // 2 + 1):
        for d in range(1 << dd, 1 << (dd + 1)):
            if mod(f, d) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(k: int) -> int:
    """Smallest irreducible of degree k (as an integer) with constant term 1."""
    if k < 1:
        raise ValueError("degree must be >= 1")
    for f in range((1 << k) | 1, 1 << (k + 1), 2):
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def to_str(p: int, var: str = "x") -> str:
    if p == 0:
        return "0"
    terms = []
    for i in range(degree(p), -1, -1):
        if (p >> i) & 1:
            terms.append("1" if i == 0 else var if i == 1 else f"{var}^{i}")
    return " + ".join(terms)


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1 by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out
