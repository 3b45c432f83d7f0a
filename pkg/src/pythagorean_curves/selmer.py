"""2-Selmer group of a family curve and the resulting rank upper bound.

A class (d1, d2) of signed squarefree integers supported on S = {-1} u {p | 2D}
corresponds to the homogeneous space

    d1 z1^2 - d2 z2^2    = (e2 - e1) w^2
    d1 z1^2 - d1 d2 z3^2 = (e3 - e1) w^2,

which has a point over Q_v exactly when (d1, d2) lies in the image W_v of
E(Q_v) under the local descent map. |E(Q_v)/2E(Q_v)| is known in advance
(2 at the real place, 4 at odd p, 8 at p = 2), so W_v is found by mapping
sample points of E(Q_v) until the span reaches that size. The Selmer group is
then the kernel of a linear map over F_2 and never needs the full candidate
box to be enumerated.

``homogeneous_space_solvable`` decides the same local question by a residue
search with Hensel lifting. It finishes any local image that sampling leaves
short and doubles as an independent check on the sampled images.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from math import gcd, isqrt, prod

from .arith import (
    REAL_PLACE,
    class_representatives,
    gf2_in_span,
    gf2_insert,
    gf2_nullspace,
    gf2_span,
    is_local_square,
    is_square,
    local_class,
    local_class_width,
    prime_support,
    square_class_rep,
    valuation,
)
from .curves import INFINITY, CurvePoint, FamilyCurve
from .descent import descent_values

log = logging.getLogger(__name__)

RANK_CAP = 48
SAMPLING_ROUNDS = 8


class FactorizationFailure(RuntimeError):
    pass


def bad_primes(curve: FamilyCurve) -> list[int]:
    """Primes dividing 2D, read off from a, b, a - b and a + b."""
    a, b, _ = curve.triple.abc
    return prime_support([2, a, b, a - b, a + b])


def _target_dim(p: int) -> int:
    if p == REAL_PLACE:
        return 1
    return 3 if p == 2 else 2


def _pair_class(curve: FamilyCurve, x: Fraction, p: int) -> int:
    v1, v2, _ = descent_values(curve, x)
    return local_class(v1, p) | local_class(v2, p) << local_class_width(p)


def _real_samples(curve: FamilyCurve):
    lo, mid, hi = sorted(curve.roots)
    yield Fraction(hi + 1)
    yield Fraction(lo + mid, 2)


def _padic_samples(curve: FamilyCurve, p: int, rnd: int):
    depth = 3 + 2 * rnd + max(valuation(curve.D, p), 1)
    width = 4 << rnd
    for k in range(depth + 1):
        pk = p ** k
        for s in range(1, width + 1):
            for base in curve.roots:
                yield Fraction(base + s * pk)
                yield Fraction(base - s * pk)
            if k:
                yield Fraction(s, pk * pk)
                yield Fraction(-s, pk * pk)


@dataclass(frozen=True)
class LocalImage:
    place: int
    basis: tuple[int, ...]
    complete: bool

    @property
    def width(self) -> int:
        return local_class_width(self.place)

    def contains(self, c1: int, c2: int) -> bool:
        basis = {}
        for v in self.basis:
            gf2_insert(basis, v)
        return gf2_in_span(basis, c1 | c2 << self.width)


def local_image(curve: FamilyCurve, p: int, rounds: int = SAMPLING_ROUNDS) -> LocalImage:
    """Image of E(Q_p) (or E(R) for REAL_PLACE) in (Q_p*/Q_p*^2)^2 via (x - e1, x - e2)."""
    target = _target_dim(p)
    basis: dict[int, int] = {}

    def take(x: Fraction) -> bool:
        fx = curve.rhs(x)
        if fx != 0 and not is_local_square(fx, p):
            return False
        gf2_insert(basis, _pair_class(curve, x, p))
        return len(basis) == target

    for e in curve.roots:
        if take(Fraction(e)):
            return LocalImage(p, tuple(basis.values()), True)
    if p == REAL_PLACE:
        samples = [_real_samples(curve)]
    else:
        samples = (_padic_samples(curve, p, r) for r in range(rounds))
    for batch in samples:
        for x in batch:
            if take(x):
                return LocalImage(p, tuple(basis.values()), True)
    return _local_image_by_residues(curve, p, basis, target)


def _local_image_by_residues(curve: FamilyCurve, p: int, basis: dict[int, int], target: int) -> LocalImage:
    """Finish a local image that sampling left short, one class pair at a time."""
    reps = class_representatives(p)
    w = local_class_width(p)
    for c1, d1 in enumerate(reps):
        for c2, d2 in enumerate(reps):
            v = c1 | c2 << w
            if gf2_in_span(basis, v):
                continue
            if homogeneous_space_solvable(curve, d1, d2, p):
                gf2_insert(basis, v)
                if len(basis) == target:
                    return LocalImage(p, tuple(basis.values()), True)
    log.warning("local image at %s for %s stopped at dimension %d < %d", p, curve, len(basis), target)
    return LocalImage(p, tuple(basis.values()), False)


@dataclass(frozen=True)
class SelmerCandidate:
    d1: int
    d2: int
    locally_solvable: bool
    global_witness: CurvePoint | None = None


@dataclass
class SelmerGroup:
    """The 2-Selmer group as a subspace of F_2^(2n) over generators {-1, p in S}."""

    curve: FamilyCurve
    generators: list[int]
    local_images: dict[int, LocalImage]
    basis: list[int]
    notes: list[str] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank_bound(self) -> int:
        return self.dim - 2

    def to_pair(self, v: int) -> tuple[int, int]:
        d1 = prod(g for k, g in enumerate(self.generators) if v >> k & 1)
        d2 = prod(g for k, g in enumerate(self.generators) if v >> (k + self.n) & 1)
        return d1, d2

    def elements(self) -> list[tuple[int, int]]:
        return [self.to_pair(v) for v in gf2_span(self.basis)]

    def class_bits(self, q: Fraction) -> int:
        """Exponent parities of q's square class over the generators.

        Raises AssertionError if q is not an S-unit times a square.
        """
        n = square_class_rep(q)
        bits = 1 if n < 0 else 0
        n = abs(n)
        for k, g in enumerate(self.generators[1:], start=1):
            v = 0
            while n % g == 0:
                n //= g
                v += 1
            bits |= (v & 1) << k
        if not is_square(n):
            raise AssertionError(f"{q} is not an S-unit modulo squares for S = {self.generators}")
        return bits

    def point_vector(self, P: CurvePoint) -> int:
        if P.is_infinity:
            return 0
        v1, v2, _ = descent_values(self.curve, P.x)
        return self.class_bits(v1) | self.class_bits(v2) << self.n

    def pair_vector(self, d1: int, d2: int) -> int:
        return self.class_bits(Fraction(d1)) | self.class_bits(Fraction(d2)) << self.n


def _constraint_rows(generators: list[int], image: LocalImage) -> list[int]:
    w = image.width
    annihilator = gf2_nullspace(list(image.basis), 2 * w)
    n = len(generators)
    cls = [local_class(g, image.place) for g in generators]
    rows = []
    for lam in annihilator:
        row = 0
        for k in range(n):
            if bin(lam & cls[k]).count("1") & 1:
                row |= 1 << k
            if bin(lam & (cls[k] << w)).count("1") & 1:
                row |= 1 << (k + n)
        rows.append(row)
    return rows


def selmer_group(curve: FamilyCurve, rounds: int = SAMPLING_ROUNDS) -> SelmerGroup:
    try:
        primes = bad_primes(curve)
    except Exception as exc:  # pragma: no cover - sympy factors these sizes instantly
        raise FactorizationFailure(str(exc)) from exc
    generators = [-1] + primes
    images = {}
    rows: list[int] = []
    notes = []
    for place in [REAL_PLACE] + primes:
        img = local_image(curve, place, rounds)
        images[place] = img
        if not img.complete:
            notes.append(f"local image at {place} incomplete; its conditions were dropped")
            continue
        rows.extend(_constraint_rows(generators, img))
    basis = gf2_nullspace(rows, 2 * len(generators))
    group = SelmerGroup(curve, generators, images, basis, notes)
    if group.dim < 2:
        raise AssertionError(f"Selmer group of {curve} misses the 2-torsion images")
    return group


def selmer_upper_bound(curve: FamilyCurve, rounds: int = SAMPLING_ROUNDS) -> int:
    """dim Sel^2 - 2, an upper bound on the Mordell-Weil rank."""
    return min(selmer_group(curve, rounds).rank_bound, RANK_CAP)


# -- global search on homogeneous spaces ------------------------------------


@lru_cache(maxsize=4096)
def _conic_point(d1: int, d2: int, alpha: int) -> tuple[int, int, int] | None:
    """A nonzero integer solution of d1 u^2 - d2 v^2 = alpha w^2, or None."""
    from sympy import symbols
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

    u, v, w = symbols("u v w", integer=True)
    sol = diop_ternary_quadratic(d1 * u ** 2 - d2 * v ** 2 - alpha * w ** 2)
    if sol is None or sol[0] is None:
        return None
    sol = tuple(int(c) for c in sol)
    if d1 * sol[0] ** 2 - d2 * sol[1] ** 2 != alpha * sol[2] ** 2 or not any(sol):
        raise AssertionError(f"bad conic solution {sol} for ({d1}, {d2}, {alpha})")
    return sol


def _directions(bound: int):
    """Primitive (r, q) with q >= 0 (r > 0 when q = 0), by height then lexicographically."""
    yield (1, 0)
    for h in range(1, bound + 1):
        for r in range(-h, h + 1):
            for q in (h,) if abs(r) < h else range(1, h + 1):
                if gcd(r, q) == 1:
                    yield (r, q)


def homogeneous_space_point(curve: FamilyCurve, d1: int, d2: int, bound: int) -> CurvePoint | None:
    """Search the (d1, d2) homogeneous space for a rational point; return its image on E.

    The first equation d1 z1^2 - d2 z2^2 = (e2 - e1) is a conic. Starting from
    one rational point of it, every other point is cut out by a line through
    that point with direction (r, q); the second equation then asks for
    d1 d2 (d1 u^2 - (e3 - e1) w^2) to be a square. Directions are tried up to
    height ``bound`` in a fixed order and the first hit is returned.
    """
    if d1 < 0:
        return None  # x - e1 > 0 on every real point
    e1, e2, e3 = curve.roots
    alpha, beta = e2 - e1, e3 - e1
    base = _conic_point(d1, d2, alpha)
    if base is None:
        return None
    coeffs = (d1, -d2, -alpha)
    # the direction plane must miss the base point
    hole = next(k for k in range(3) if base[k])
    s0, s1 = [k for k in range(3) if k != hole]
    c0, c1 = coeffs[s0], coeffs[s1]
    b0, b1 = c0 * base[s0], c1 * base[s1]
    u0, w0 = base[0], base[2]
    # Y has entries r at s0 and q at s1; its u and w entries
    u_from = {s0: 0, s1: 1}.get(0)
    w_from = {s0: 0, s1: 1}.get(2)
    d12 = d1 * d2
    for r, q in _directions(bound):
        qy = c0 * r * r + c1 * q * q
        bxy2 = 2 * (b0 * r + b1 * q)
        yu = 0 if u_from is None else (r, q)[u_from]
        yw = 0 if w_from is None else (r, q)[w_from]
        u = qy * u0 - bxy2 * yu
        w = qy * w0 - bxy2 * yw
        if w == 0 or u == 0:
            continue
        t = d12 * (d1 * u * u - beta * w * w)
        if t <= 0:
            continue
        s = isqrt(t)
        if s * s != t:
            continue
        x = e1 + Fraction(d1 * u * u, w * w)
        fx = curve.rhs(x)
        y = Fraction(isqrt(fx.numerator), isqrt(fx.denominator))
        if y * y != fx:
            raise AssertionError(f"homogeneous space point gave non-square f(x) at x = {x}")
        return CurvePoint(x, y)
    return None


def enumerate_selmer_candidates(
    curve: FamilyCurve,
    search_bound: int,
    max_box: int = 1 << 16,
    rounds: int = SAMPLING_ROUNDS,
) -> list[SelmerCandidate]:
    """Every pair (d1, d2) over {-1} u {p | 2D} with its local and global status.

    Candidates are listed in increasing order of their generator bitmask. Local
    solvability comes from the local images; a bounded search upgrades
    solvable candidates to globally witnessed ones, and any product of two
    witnessed classes is witnessed by the sum of the points.
    """
    group = selmer_group(curve, rounds)
    n = group.n
    if 1 << (2 * n) > max_box:
        raise ValueError(f"candidate box of size 2^{2 * n} exceeds max_box={max_box}")
    basis: dict[int, int] = {}
    for v in group.basis:
        gf2_insert(basis, v)
    witnesses: dict[int, CurvePoint] = {}
    witnessed_basis: dict[int, int] = {}
    for v in gf2_span(group.basis):
        if gf2_in_span(witnessed_basis, v):
            continue
        d1, d2 = group.to_pair(v)
        P = homogeneous_space_point(curve, d1, d2, search_bound)
        if P is not None:
            witnesses[v] = P
            gf2_insert(witnessed_basis, v)
    out = []
    for v in range(1 << (2 * n)):
        d1, d2 = group.to_pair(v)
        solvable = gf2_in_span(basis, v)
        P = witnesses.get(v) if solvable else None
        if v == 0:
            P = INFINITY  # the identity class is the image of O
        if solvable and P is None and gf2_in_span(witnessed_basis, v):
            P = _witness_from_span(curve, group, witnesses, v)
        out.append(SelmerCandidate(d1, d2, solvable, P))
    return out


def _witness_from_span(curve, group, witnesses, v):
    from .curves import add

    items = list(witnesses.items())
    for r in range(1, len(items) + 1):
        for combo in itertools.combinations(items, r):
            acc = 0
            for w, _ in combo:
                acc ^= w
            if acc == v:
                P = combo[0][1]
                for _, Q in combo[1:]:
                    P = add(curve, P, Q)
                if group.point_vector(P) != v:
                    raise AssertionError("descent map failed to be additive")
                return P
    return None


# -- direct local solvability (independent check) ---------------------------


def _real_solvable(curve: FamilyCurve, d1: int, d2: int) -> bool:
    lo, mid, hi = sorted(curve.roots)
    want = (d1 > 0, d2 > 0, d1 * d2 > 0)
    for x in (Fraction(lo - 1), Fraction(lo + mid, 2), Fraction(mid + hi, 2), Fraction(hi + 1)):
        signs = tuple(x - e > 0 for e in curve.roots)
        if signs == want:
            return True
    return False


_ANY = "any"


def _ball_status(c2: int, c0: int, s: int, k: int, p: int, target: int):
    """Square class behaviour of q(s') = c2 s'^2 + c0 on the ball s' = s mod p^k.

    True/False when q has one class on the ball (equal to target's or not),
    _ANY when the ball holds a root of q (q then takes every class there),
    None when more digits are needed.
    """
    q = c2 * s * s + c0
    extra = 3 if p == 2 else 1
    if q == 0:
        return _ANY
    v = valuation(q, p)
    # q(s + p^k h) - q(s) = c2 p^k h (2 s + p^k h)
    drift = valuation(c2, p) + (2 * k if s == 0 else k + min(valuation(2 * s, p), k))
    if v + extra <= drift:
        return local_class(q, p) == local_class(target, p)
    # a root s0 with v(s - s0) >= k forces v(q) >= k + v(c2) + v(2 s0)
    num = valuation(c0, p) - valuation(c2, p)
    if num % 2 == 0:
        v2s0 = valuation(2, p) + num // 2
        if k >= v2s0 + extra and v >= k + valuation(c2, p) + v2s0:
            return _ANY
    return None


def homogeneous_space_solvable(
    curve: FamilyCurve,
    d1: int,
    d2: int,
    p: int,
    depth: int | None = None,
    node_budget: int = 200_000,
) -> bool | None:
    """Whether the (d1, d2) homogeneous space has a Q_p point, by residue search.

    The space is d1 z1^2 - d2 z2^2 = (e2 - e1) w^2, d1 z1^2 - d1 d2 z3^2 =
    (e3 - e1) w^2. Projective (w : z1) runs over the charts (1 : t) and
    (p s : 1) with t, s in Z_p, refined one digit at a time; z2 and z3 exist
    exactly when d1 z1^2 - (e2 - e1) w^2 lies in the class of d2 and
    d1 z1^2 - (e3 - e1) w^2 in the class of d1 d2, which Hensel's lemma
    settles once enough digits are known. Returns None if the depth or node
    budget runs out first. The default depth is 2 v_p(2D) + 3.
    """
    if p == REAL_PLACE:
        return _real_solvable(curve, d1, d2)
    e1, e2, e3 = curve.roots
    al, be = e2 - e1, e3 - e1
    d12 = d1 * d2
    if depth is None:
        depth = 2 * valuation(2 * curve.D, p) + 3
    pp = p * p
    charts = (
        ((d1, -al, d2), (d1, -be, d12)),  # w = 1, z1 = t
        ((-al * pp, d1, d2), (-be * pp, d1, d12)),  # w = p s, z1 = 1
    )
    nodes = 0
    frontier = [(c, r) for c in range(2) for r in range(p)]
    k = 1
    while frontier:
        if k > depth:
            return None
        nodes += len(frontier)
        if nodes > node_budget:
            return None
        nxt = []
        for c, r in frontier:
            (a2, a0, t2), (b2, b0, t3) = charts[c]
            st2 = _ball_status(a2, a0, r, k, p, t2)
            st3 = _ball_status(b2, b0, r, k, p, t3)
            if st2 is False or st3 is False:
                continue
            if st2 is not None and st3 is not None and (st2, st3) != (_ANY, _ANY):
                return True
            nxt.extend((c, r + d * p ** k) for d in range(p))
        frontier = nxt
        k += 1
    return False
