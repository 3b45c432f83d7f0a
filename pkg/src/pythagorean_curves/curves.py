"""The curves y^2 = x(x - a^2)(x - b^2) attached to Pythagorean triples.

Curves are stored both as the expanded cubic x^3 + A x^2 + B x (A = -c^2,
B = a^2 b^2) and through their roots (0, a^2, b^2). Points carry exact
:class:`~fractions.Fraction` coordinates; the group law is the usual chord and
tangent construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .arith import Rational, as_fraction, integral_shape_ok
from .triples import PythagoreanTriple


class PointNotOnCurve(ValueError):
    pass


class BadReductionPrime(ValueError):
    pass


@dataclass(frozen=True)
class CurvePoint:
    """An affine point with exact rational coordinates, or the point at infinity."""

    x: Fraction | None = None
    y: Fraction | None = None

    def __post_init__(self) -> None:
        if (self.x is None) != (self.y is None):
            raise ValueError("a point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", as_fraction(self.x))
            object.__setattr__(self, "y", as_fraction(self.y))

    @classmethod
    def affine(cls, x: Rational | str, y: Rational | str) -> "CurvePoint":
        return cls(as_fraction(x), as_fraction(y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def is_integral(self) -> bool:
        return not self.is_infinity and self.x.denominator == 1 and self.y.denominator == 1

    def __str__(self) -> str:
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


INFINITY = CurvePoint()


def discriminant_general(a2: int, a4: int, a6: int) -> int:
    """Discriminant of the cubic x^3 + a2 x^2 + a4 x + a6."""
    return -4 * a2 ** 3 * a6 + a2 ** 2 * a4 ** 2 + 18 * a2 * a4 * a6 - 4 * a4 ** 3 - 27 * a6 ** 2


@dataclass(frozen=True)
class FamilyCurve:
    triple: PythagoreanTriple
    A: int = field(init=False)
    B: int = field(init=False)
    roots: tuple[int, int, int] = field(init=False)

    def __post_init__(self) -> None:
        a, b, c = self.triple.abc
        object.__setattr__(self, "A", -c * c)
        object.__setattr__(self, "B", a * a * b * b)
        object.__setattr__(self, "roots", (0, a * a, b * b))
        if self.D == 0:
            raise AssertionError(f"singular curve from {self.triple}")

    @cached_property
    def D(self) -> int:
        return discriminant(self)

    @property
    def e1(self) -> int:
        return self.roots[0]

    @property
    def e2(self) -> int:
        return self.roots[1]

    @property
    def e3(self) -> int:
        return self.roots[2]

    def rhs(self, x: Rational) -> Rational:
        return x * (x * (x + self.A) + self.B)

    def point(self, x: Rational | str, y: Rational | str) -> CurvePoint:
        P = CurvePoint.affine(x, y)
        _check(self, P)
        return P

    def __str__(self) -> str:
        return f"y^2 = x^3 - {-self.A}x^2 + {self.B}x"


def curve_from_triple(t: PythagoreanTriple) -> FamilyCurve:
    return FamilyCurve(t)


def discriminant(curve: FamilyCurve) -> int:
    """a^4 b^4 (c^4 - 4a^2 b^2), the discriminant of the defining cubic."""
    a, b, c = curve.triple.abc
    return a ** 4 * b ** 4 * (c ** 4 - 4 * a * a * b * b)


def is_on_curve(curve: FamilyCurve, P: CurvePoint) -> bool:
    if P.is_infinity:
        return True
    return P.y * P.y == curve.rhs(P.x)


def _check(curve: FamilyCurve, *points: CurvePoint) -> None:
    for P in points:
        if not is_on_curve(curve, P):
            raise PointNotOnCurve(f"{P} is not on {curve}")
        if not P.is_infinity and not integral_shape_ok(P.x, P.y):
            raise AssertionError(f"{P} lies on {curve} but has the wrong denominator shape")


def negate(curve: FamilyCurve, P: CurvePoint) -> CurvePoint:
    _check(curve, P)
    if P.is_infinity:
        return P
    return CurvePoint(P.x, -P.y)


def _add(curve: FamilyCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            return INFINITY
        lam = (3 * P.x * P.x + 2 * curve.A * P.x + curve.B) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - curve.A - P.x - Q.x
    return CurvePoint(x3, lam * (P.x - x3) - P.y)


def add(curve: FamilyCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    _check(curve, P, Q)
    return _add(curve, P, Q)


def scalar_mul(curve: FamilyCurve, n: int, P: CurvePoint) -> CurvePoint:
    """n * P by double-and-add."""
    _check(curve, P)
    if n < 0:
        n, P = -n, CurvePoint(P.x, -P.y) if not P.is_infinity else P
    result, addend = INFINITY, P
    while n:
        if n & 1:
            result = _add(curve, result, addend)
        addend = _add(curve, addend, addend)
        n >>= 1
    return result


def multiples(curve: FamilyCurve, P: CurvePoint, upto: int) -> list[CurvePoint]:
    """[1P, 2P, ..., upto*P] by repeated addition."""
    _check(curve, P)
    out, Q = [], INFINITY
    for _ in range(upto):
        Q = _add(curve, Q, P)
        out.append(Q)
    return out


def count_points_mod_p(curve: FamilyCurve, p: int) -> int:
    """#E(F_p) including the point at infinity, for an odd prime p of good reduction."""
    if p == 2 or curve.D % p == 0:
        raise BadReductionPrime(f"p = {p} divides 2D")
    squares = [0] * p
    for y in range(p):
        squares[y * y % p] += 1
    A, B = curve.A % p, curve.B % p
    return 1 + sum(squares[x * (x * (x + A) + B) % p] for x in range(p))
