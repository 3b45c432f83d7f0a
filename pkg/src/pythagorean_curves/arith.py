"""Exact integer and rational helpers shared by the curve, torsion and descent code.

Everything here works on Python ints and :class:`fractions.Fraction`; nothing
touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator

from sympy import factorint, isprime, nextprime

Rational = int | Fraction


def as_fraction(value: Rational | str) -> Fraction:
    """Coerce ``value`` to a lowest-terms Fraction with positive denominator."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational number")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def is_rational_square(q: Rational) -> bool:
    """True iff ``q`` is the square of a rational (0 counts as a square)."""
    q = as_fraction(q)
    return is_square(q.numerator) and is_square(q.denominator)


def rational_sqrt(q: Rational) -> Fraction:
    q = as_fraction(q)
    if not is_rational_square(q):
        raise ValueError(f"{q} is not a rational square")
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def square_class_rep(q: Rational) -> int:
    """Integer with the same class as ``q`` in Q*/Q*^2 (numerator times denominator)."""
    q = as_fraction(q)
    if q == 0:
        raise ValueError("0 has no square class")
    return q.numerator * q.denominator


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rational_valuation(q: Rational, p: int) -> int:
    q = as_fraction(q)
    return valuation(q.numerator, p) - valuation(q.denominator, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, as -1, 0 or 1."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def prime_support(values: Iterable[int]) -> list[int]:
    """Sorted list of primes dividing at least one of the nonzero ``values``."""
    primes: set[int] = set()
    for v in values:
        v = abs(v)
        if v > 1:
            primes.update(factorint(v))
    return sorted(primes)


def odd_primes_not_dividing(n: int, start: int = 3) -> Iterator[int]:
    """Odd primes >= start that do not divide n, in increasing order."""
    p = start - 1 if start > 2 else 2
    while True:
        p = nextprime(p)
        if p != 2 and n % p:
            yield p


def integral_shape_ok(x: Fraction, y: Fraction) -> bool:
    """x has a square denominator and y the matching cube denominator."""
    e = isqrt(x.denominator)
    return e * e == x.denominator and y.denominator == e ** 3


# -- local square classes ---------------------------------------------------
#
# A class in Q_p*/Q_p*^2 is encoded as a small bitmask:
#   p odd : bit0 = valuation parity, bit1 = unit part is a non-residue
#   p = 2 : bit0 = valuation parity, bit1 = unit = 3 mod 4, bit2 = unit = 3,5 mod 8
#   p = -1 (the real place): bit0 = negative
# Each encoding is a group homomorphism into F_2^k, so products become XOR.

REAL_PLACE = -1


def local_class_width(p: int) -> int:
    if p == REAL_PLACE:
        return 1
    return 3 if p == 2 else 2


def local_class(q: Rational, p: int) -> int:
    n = square_class_rep(q)
    if p == REAL_PLACE:
        return 1 if n < 0 else 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    bits = v & 1
    if p == 2:
        if n % 4 == 3:
            bits |= 2
        if n % 8 in (3, 5):
            bits |= 4
    elif legendre(n, p) == -1:
        bits |= 2
    return bits


def class_representatives(p: int) -> list[int]:
    """One small integer in each local square class, listed by class bitmask."""
    if p == REAL_PLACE:
        return [1, -1]
    if p == 2:
        reps = [1, 2, 7, 14, 5, 10, 3, 6]
    else:
        u = next(n for n in range(2, p) if legendre(n, p) == -1)
        reps = [1, p, u, u * p]
    return reps


def is_local_square(q: Rational, p: int) -> bool:
    """Nonzero ``q`` is a square in Q_p (or R when p is REAL_PLACE)."""
    return local_class(q, p) == 0


# -- linear algebra over F_2 with int bitmasks --------------------------------


def gf2_insert(basis: dict[int, int], v: int) -> bool:
    """Reduce ``v`` against an echelon basis keyed by pivot bit; add it if new."""
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            basis[top] = v
            return True
        v ^= basis[top]
    return False


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: dict[int, int] = {}
    return sum(gf2_insert(basis, v) for v in vectors)


def gf2_in_span(basis: dict[int, int], v: int) -> bool:
    while v:
        top = v.bit_length() - 1
        if top not in basis:
            return False
        v ^= basis[top]
    return True


def gf2_nullspace(rows: list[int], ncols: int) -> list[int]:
    """Basis of {v in F_2^ncols : <row, v> = 0 for every row}."""
    pivots: list[tuple[int, int]] = []  # (pivot column, reduced row)
    for r in rows:
        for col, prow in pivots:
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = r.bit_length() - 1
        pivots = [(c, pr ^ r if pr >> col & 1 else pr) for c, pr in pivots]
        pivots.append((col, r))
    pivot_cols = {c for c, _ in pivots}
    basis = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        v = 1 << free
        for col, prow in pivots:
            if prow >> free & 1:
                v |= 1 << col
        basis.append(v)
    return basis


def gf2_span(basis: list[int]) -> list[int]:
    """All 2^k elements of the span, indexed by the binary mask of basis vectors used."""
    out = []
    for mask in range(1 << len(basis)):
        v = 0
        for k, b in enumerate(basis):
            if mask >> k & 1:
                v ^= b
        out.append(v)
    return out


__all__ = [
    "Rational",
    "REAL_PLACE",
    "as_fraction",
    "class_representatives",
    "gf2_in_span",
    "gf2_insert",
    "gf2_nullspace",
    "gf2_rank",
    "gf2_span",
    "is_local_square",
    "is_rational_square",
    "is_square",
    "isprime",
    "integral_shape_ok",
    "legendre",
    "local_class",
    "local_class_width",
    "odd_primes_not_dividing",
    "prime_support",
    "rational_sqrt",
    "rational_valuation",
    "square_class_rep",
    "valuation",
]
