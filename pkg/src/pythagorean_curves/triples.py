"""Primitive Pythagorean triples from the two classical (i, j) parametrizations.

``gen_triples_even`` uses a = i^2 - j^2, b = 2ij, c = i^2 + j^2 with coprime
i, j of opposite parity; ``gen_triples_odd`` uses a = (i^2 - j^2)/2, b = ij,
c = (i^2 + j^2)/2 with coprime odd i, j.

The generator bound is exclusive by default: ``gen_triples_even(10)`` scans
1 <= j < i < 10 and produces the familiar 18 triples, and
``gen_triples_even(1000)`` produces 202461. Pass ``inclusive=True`` to scan
i <= max_ij instead.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd, isqrt


class Mode(enum.Enum):
    EVEN_FORM = "even"
    ODD_FORM = "odd"


@dataclass(frozen=True, order=True)
class TripleParams:
    i: int
    j: int

    def __post_init__(self) -> None:
        if not (self.i > self.j >= 1):
            raise ValueError(f"need i > j >= 1, got ({self.i}, {self.j})")
        if gcd(self.i, self.j) != 1:
            raise ValueError(f"({self.i}, {self.j}) are not coprime")


@dataclass(frozen=True)
class PythagoreanTriple:
    a: int
    b: int
    c: int
    params: TripleParams | None = None
    mode: Mode | None = None

    def __post_init__(self) -> None:
        a, b, c = self.a, self.b, self.c
        if min(a, b, c) <= 0:
            raise ValueError(f"({a}, {b}, {c}) has a non-positive entry")
        if a * a + b * b != c * c:
            raise ValueError(f"({a}, {b}, {c}) is not a Pythagorean triple: {a * a + b * b} != {c * c}")
        if gcd(a, b) != 1:
            raise ValueError(f"({a}, {b}, {c}) is not primitive")
        if self.params is not None and self.mode is not None:
            if _from_params(self.params.i, self.params.j, self.mode) != (a, b, c):
                raise ValueError(f"({a}, {b}, {c}) does not come from {self.params} in {self.mode.name}")

    @property
    def abc(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def _from_params(i: int, j: int, mode: Mode) -> tuple[int, int, int]:
    if mode is Mode.EVEN_FORM:
        return (i * i - j * j, 2 * i * j, i * i + j * j)
    return ((i * i - j * j) // 2, i * j, (i * i + j * j) // 2)


def _upper(max_ij: int, inclusive: bool) -> int:
    return max_ij + 1 if inclusive else max_ij


def gen_triples_even(max_ij: int, *, inclusive: bool = False) -> list[PythagoreanTriple]:
    """Triples a = i^2-j^2, b = 2ij, c = i^2+j^2, ordered by (i, j).

    Pairs with gcd(i, j) > 1 or i + j even are skipped silently.
    """
    if max_ij < 2:
        raise ValueError(f"max_ij must be >= 2, got {max_ij}")
    out = []
    for i in range(2, _upper(max_ij, inclusive)):
        for j in range(1 + (i % 2 == 1), i, 2):
            if gcd(i, j) == 1:
                out.append(PythagoreanTriple(i * i - j * j, 2 * i * j, i * i + j * j,
                                             TripleParams(i, j), Mode.EVEN_FORM))
    return out


def gen_triples_odd(max_ij: int, *, inclusive: bool = False) -> list[PythagoreanTriple]:
    """Triples a = (i^2-j^2)/2, b = ij, c = (i^2+j^2)/2 for odd coprime i > j >= 1."""
    if max_ij < 3:
        raise ValueError(f"max_ij must be >= 3, got {max_ij}")
    out = []
    for i in range(3, _upper(max_ij, inclusive), 2):
        for j in range(1, i, 2):
            if gcd(i, j) == 1:
                a, b, c = _from_params(i, j, Mode.ODD_FORM)
                out.append(PythagoreanTriple(a, b, c, TripleParams(i, j), Mode.ODD_FORM))
    return out


def canonicalize(t: PythagoreanTriple) -> PythagoreanTriple:
    """Reorder so the odd leg comes first; provenance is rederived for the new order."""
    if t.a % 2 == 1:
        return t
    return triple_from_abc(t.b, t.a, t.c)


def triple_from_abc(a: int, b: int, c: int) -> PythagoreanTriple:
    """Validate (a, b, c) and recover the (i, j) provenance for its leg order.

    An odd first leg means the even form (c + a = 2i^2); an even first leg means
    the odd form (c + a = i^2).
    """
    t = PythagoreanTriple(a, b, c)
    if a % 2 == 1:
        i2, j2, mode = (c + a) // 2, (c - a) // 2, Mode.EVEN_FORM
    else:
        i2, j2, mode = c + a, c - a, Mode.ODD_FORM
    i, j = isqrt(i2), isqrt(j2)
    if i * i != i2 or j * j != j2:
        raise AssertionError(f"no integral (i, j) for primitive triple {t}")
    return PythagoreanTriple(a, b, c, TripleParams(i, j), mode)


def triple_from_params(i: int, j: int, mode: Mode = Mode.EVEN_FORM) -> PythagoreanTriple:
    params = TripleParams(i, j)
    if mode is Mode.EVEN_FORM and (i + j) % 2 == 0:
        raise ValueError(f"({i}, {j}) must have opposite parity")
    if mode is Mode.ODD_FORM and (i % 2 == 0 or j % 2 == 0):
        raise ValueError(f"({i}, {j}) must both be odd")
    a, b, c = _from_params(i, j, mode)
    return PythagoreanTriple(a, b, c, params, mode)
