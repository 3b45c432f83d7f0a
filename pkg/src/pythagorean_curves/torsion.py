"""Torsion of the family: full rational 2-torsion, no 4-torsion, nothing odd.

The torsion order is pinned down without enumerating divisors of D:

* the three roots give rational points of order 2;
* none of them is a double (the halving criterion fails on each), so there is
  no point of order 4;
* torsion injects into E(F_p) for good odd p, so its odd part divides the odd
  part of gcd #E(F_p) over a few such primes. Under Mazur's list the only odd
  order compatible with full 2-torsion is 3, so a gcd with trivial odd part
  settles it; the rare case where 3 survives every prime is decided by looking
  for rational roots of the 3-division polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from .arith import is_rational_square, odd_primes_not_dividing
from .curves import (
    CurvePoint,
    FamilyCurve,
    INFINITY,
    _check,
    count_points_mod_p,
    multiples,
)

MAZUR_ORDERS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)
DEFAULT_MIN_PRIMES = 3
DEFAULT_PRIME_CAP = 1000


class InsufficientGoodPrimes(RuntimeError):
    pass


@dataclass(frozen=True)
class TorsionReport:
    two_torsion: tuple[CurvePoint, CurvePoint, CurvePoint]
    group_structure: str
    order: int
    order_bound_evidence: tuple[tuple[int, int], ...]
    has_order4: bool
    count_gcd: int
    notes: tuple[str, ...] = field(default=())


def two_torsion_points(curve: FamilyCurve) -> list[CurvePoint]:
    return [CurvePoint(e, 0) for e in curve.roots]


def is_halvable(curve: FamilyCurve, P: CurvePoint) -> bool:
    """P = 2Q for some rational Q iff every x(P) - e_i is a rational square."""
    _check(curve, P)
    if P.is_infinity:
        raise ValueError("the halving test needs an affine point")
    return all(is_rational_square(P.x - e) for e in curve.roots)


def verify_no_order_four(curve: FamilyCurve) -> bool:
    return not any(is_halvable(curve, T) for T in two_torsion_points(curve))


def _torsion_by_multiples(curve: FamilyCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    hits = {n for n, Q in enumerate(multiples(curve, P, 12), start=1) if Q.is_infinity}
    return any(n in hits for n in MAZUR_ORDERS)


def nagell_lutz_excludes(curve: FamilyCurve, P: CurvePoint) -> bool:
    """True when P has integer coordinates, y != 0 and y does not divide D."""
    return P.is_integral and P.y != 0 and curve.D % P.y.numerator != 0


def is_torsion(curve: FamilyCurve, P: CurvePoint) -> bool:
    _check(curve, P)
    if nagell_lutz_excludes(curve, P):
        return False
    return _torsion_by_multiples(curve, P)


def _has_rational_three_torsion(curve: FamilyCurve) -> bool:
    # psi_3 = 3x^4 + 4Ax^3 + 6Bx^2 - B^2; torsion points are integral, so only
    # integer roots matter.
    from sympy import Poly, symbols

    x = symbols("x")
    psi3 = Poly(3 * x ** 4 + 4 * curve.A * x ** 3 + 6 * curve.B * x ** 2 - curve.B ** 2, x)
    for root in psi3.ground_roots():
        if root.is_integer:
            rhs = curve.rhs(int(root))
            if rhs >= 0 and is_rational_square(rhs):
                return True
    return False


def torsion_subgroup(
    curve: FamilyCurve,
    min_primes: int = DEFAULT_MIN_PRIMES,
    prime_cap: int = DEFAULT_PRIME_CAP,
) -> TorsionReport:
    evidence: list[tuple[int, int]] = []
    g = 0
    for p in odd_primes_not_dividing(2 * curve.D):
        if p >= prime_cap:
            break
        n = count_points_mod_p(curve, p)
        evidence.append((p, n))
        g = gcd(g, n)
        odd = g
        while odd % 2 == 0:
            odd //= 2
        if len(evidence) >= min_primes and odd == 1:
            break
    if len(evidence) < min_primes:
        raise InsufficientGoodPrimes(
            f"only {len(evidence)} good odd primes below {prime_cap} for {curve}"
        )
    if g % 4:
        raise AssertionError(f"gcd of point counts {g} is not a multiple of 4 for {curve}")
    notes = []
    odd = g
    while odd % 2 == 0:
        odd //= 2
    if odd % 3 == 0:
        if _has_rational_three_torsion(curve):
            raise AssertionError(f"{curve} has a rational point of order 3")
        notes.append("3 divides every point count; no rational 3-torsion point exists")
    elif odd != 1:
        notes.append(f"odd part {odd} of the count gcd is prime to 3; no odd torsion fits Mazur's list")
    has_order4 = not verify_no_order_four(curve)
    if has_order4:
        raise AssertionError(f"{curve} has a point of order 4")
    two = two_torsion_points(curve)
    for T in two:
        if multiples(curve, T, 2)[1] != INFINITY:
            raise AssertionError(f"{T} is not 2-torsion on {curve}")
    return TorsionReport(
        two_torsion=tuple(two),
        group_structure="Z/2Z x Z/2Z",
        order=4,
        order_bound_evidence=tuple(evidence),
        has_order4=False,
        count_gcd=reduce(gcd, (n for _, n in evidence)),
        notes=tuple(notes),
    )
