"""Rank intervals: certified lower bounds from points, upper bounds from 2-Selmer."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

from .arith import gf2_in_span, gf2_insert, gf2_span
from .curves import CurvePoint, FamilyCurve, _check
from .descent import independent_subset, infinite_order_witness, search_points
from .selmer import RANK_CAP, SAMPLING_ROUNDS, homogeneous_space_point, selmer_group


class InvariantBreach(AssertionError):
    """A mathematical guarantee failed; this always indicates a bug."""


@dataclass(frozen=True)
class RankConfig:
    point_height: int = 300
    descent_bound: int = 60
    selmer_enabled: bool = True
    sampling_rounds: int = SAMPLING_ROUNDS

    def fingerprint(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class RankInterval:
    lower: int
    upper: int
    lower_witnesses: list[CurvePoint]
    selmer_dim: int | None = None
    selmer_elements: list[tuple[int, int]] = field(default_factory=list)
    method_notes: list[str] = field(default_factory=list)

    @property
    def exact(self) -> bool:
        return self.lower == self.upper


def rank_interval(
    curve: FamilyCurve,
    config: RankConfig = RankConfig(),
    extra_points: list[CurvePoint] = (),
) -> RankInterval:
    notes = []
    _check(curve, *extra_points)
    witness, _ = infinite_order_witness(curve)
    points = list(extra_points) + search_points(curve, config.point_height)
    upper = RANK_CAP
    selmer_dim = None
    elements: list[tuple[int, int]] = []
    if config.selmer_enabled:
        group = selmer_group(curve, config.sampling_rounds)
        notes.extend(group.notes)
        selmer_dim = group.dim
        elements = group.elements()
        upper = min(group.rank_bound, RANK_CAP)
        found: dict[int, int] = {}
        for P in points:
            if not P.is_infinity:
                gf2_insert(found, group.point_vector(P))
        # every unwitnessed class is searched on its own: a bounded search
        # can miss a class even when another class of the same coset has a point
        for v in gf2_span(group.basis):
            if gf2_in_span(found, v):
                continue
            P = homogeneous_space_point(curve, *group.to_pair(v), config.descent_bound)
            if P is None:
                continue
            if group.point_vector(P) != v:
                raise InvariantBreach(f"{P} does not map to its homogeneous space class")
            points.append(P)
            gf2_insert(found, v)
    else:
        notes.append("Selmer bound disabled; upper bound is the family cap")
    basis = independent_subset(curve, [P for P in points if not P.is_infinity])
    lower = max(1, len(basis))
    if not basis:
        basis = [witness]
        notes.append("rank >= 1 from the non-torsion point (c^2, abc)")
    if lower > upper:
        raise InvariantBreach(f"lower bound {lower} exceeds upper bound {upper} on {curve}")
    return RankInterval(lower, upper, basis, selmer_dim, elements, notes)
