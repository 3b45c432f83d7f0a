"""Complete 2-descent map, independence certificates and point search.

For y^2 = (x - e1)(x - e2)(x - e3) with all roots rational the map

    P = (x, y)  ->  (x - e1, x - e2, x - e3)  in (Q*/Q*^2)^3

is a homomorphism with kernel 2E(Q); at a root the vanishing coordinate is
replaced by the product of the other two. Classes are compared by testing
whether a product is a rational square, so huge coordinates never need
factoring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import Rational, as_fraction, is_square, square_class_rep
from .curves import CurvePoint, FamilyCurve, INFINITY, _check, multiples
from .torsion import MAZUR_ORDERS, nagell_lutz_excludes, two_torsion_points


def square_class_equal(u: Rational, v: Rational) -> bool:
    """True iff u*v is the square of a rational."""
    if u == 0 or v == 0:
        raise ValueError("square classes are only defined for nonzero rationals")
    return is_square(square_class_rep(u) * square_class_rep(v))


def _class_product(u: int, v: int) -> int:
    g = gcd(u, v)
    return (u // g) * (v // g)


@dataclass(frozen=True)
class SquareClassVector:
    """Representatives (v1, v2, v3) of a class in (Q*/Q*^2)^3."""

    v1: Fraction
    v2: Fraction
    v3: Fraction

    @property
    def values(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.v1, self.v2, self.v3)

    def reduced(self) -> "SquareClassVector":
        """Same class with integer representatives."""
        return SquareClassVector(*(Fraction(square_class_rep(v)) for v in self.values))

    def __mul__(self, other: "SquareClassVector") -> "SquareClassVector":
        return SquareClassVector(*(
            Fraction(_class_product(square_class_rep(u), square_class_rep(v)))
            for u, v in zip(self.values, other.values)
        ))

    def same_class(self, other: "SquareClassVector") -> bool:
        return all(square_class_equal(u, v) for u, v in zip(self.values, other.values))

    @property
    def is_identity(self) -> bool:
        return all(square_class_equal(v, 1) for v in self.values)

    def product_is_square(self) -> bool:
        return is_square(square_class_rep(self.v1 * self.v2 * self.v3))


IDENTITY_CLASS = SquareClassVector(Fraction(1), Fraction(1), Fraction(1))


def descent_values(curve: FamilyCurve, x: Rational) -> tuple[Fraction, Fraction, Fraction]:
    """Descent map values at an x-coordinate of a point, root convention included."""
    x = as_fraction(x)
    diffs = [x - e for e in curve.roots]
    for i in range(3):
        if diffs[i] == 0:
            j, k = [n for n in range(3) if n != i]
            diffs[i] = diffs[j] * diffs[k]
    return (diffs[0], diffs[1], diffs[2])


def descent_image(curve: FamilyCurve, P: CurvePoint) -> SquareClassVector:
    _check(curve, P)
    if P.is_infinity:
        return IDENTITY_CLASS
    return SquareClassVector(*descent_values(curve, P.x))


class _Span:
    """Subgroup of (Q*/Q*^2)^3 kept as an explicit list of reduced elements."""

    def __init__(self) -> None:
        self.elements = [IDENTITY_CLASS]

    def __contains__(self, v: SquareClassVector) -> bool:
        return any(v.same_class(s) for s in self.elements)

    def add(self, v: SquareClassVector) -> bool:
        v = v.reduced()
        if v in self:
            return False
        self.elements = self.elements + [s * v for s in self.elements]
        return True

    @property
    def dim(self) -> int:
        return len(self.elements).bit_length() - 1


def _torsion_span(curve: FamilyCurve) -> _Span:
    span = _Span()
    for T in two_torsion_points(curve):
        span.add(descent_image(curve, T))
    if span.dim != 2:
        raise AssertionError(f"2-torsion images of {curve} span dimension {span.dim}, expected 2")
    return span


def independent_subset(curve: FamilyCurve, points: list[CurvePoint]) -> list[CurvePoint]:
    """Points whose images are independent modulo the 2-torsion images (greedy, in order)."""
    span = _torsion_span(curve)
    chosen = []
    for P in points:
        if P.is_infinity:
            raise ValueError("the point at infinity has no descent image to contribute")
        if span.add(descent_image(curve, P)):
            chosen.append(P)
    return chosen


def independence_rank(curve: FamilyCurve, points: list[CurvePoint]) -> int:
    """F_2-dimension of the span of the images of ``points`` modulo 2-torsion images.

    This is a lower bound for the Mordell-Weil rank.
    """
    return len(independent_subset(curve, points))


def search_points(curve: FamilyCurve, height_bound: int) -> list[CurvePoint]:
    """Affine points with x = m/e^2, 0 <= m <= height_bound, 1 <= e <= isqrt(height_bound).

    Only y >= 0 is returned. Negative x needs no scan: every root is >= 0, so
    the cubic is negative there.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    A, B = curve.A, curve.B
    found = []
    for e in range(1, isqrt(height_bound) + 1):
        e2 = e * e
        e4 = e2 * e2
        for m in range(0, height_bound + 1):
            if gcd(m, e) != 1:
                continue
            n = m * (m * m + A * m * e2 + B * e4)
            if n < 0:
                continue
            r = isqrt(n)
            if r * r == n:
                found.append(CurvePoint(Fraction(m, e2), Fraction(r, e2 * e)))
    found.sort(key=lambda P: P.x)
    return found


@dataclass(frozen=True)
class WitnessCertificate:
    on_curve: bool
    discriminant: int
    y_divides_D: bool
    nonzero_multiples: tuple[int, ...]

    @property
    def certifies_infinite_order(self) -> bool:
        return (
            self.on_curve
            and not self.y_divides_D
            and self.nonzero_multiples == MAZUR_ORDERS
        )


def infinite_order_witness(curve: FamilyCurve) -> tuple[CurvePoint, WitnessCertificate]:
    """The point (c^2, abc) together with the facts that make it non-torsion."""
    a, b, c = curve.triple.abc
    P = CurvePoint(Fraction(c * c), Fraction(a * b * c))
    on_curve = P.y * P.y == curve.rhs(P.x)
    if not on_curve:
        raise AssertionError(f"{P} is not on {curve}")
    mults = multiples(curve, P, max(MAZUR_ORDERS))
    nonzero = tuple(n for n in MAZUR_ORDERS if mults[n - 1] != INFINITY)
    cert = WitnessCertificate(
        on_curve=on_curve,
        discriminant=curve.D,
        y_divides_D=not nagell_lutz_excludes(curve, P),
        nonzero_multiples=nonzero,
    )
    if not cert.certifies_infinite_order:
        raise AssertionError(f"witness {P} failed to certify infinite order on {curve}: {cert}")
    return P, cert
