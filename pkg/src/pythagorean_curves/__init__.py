"""Elliptic curves y^2 = x(x - a^2)(x - b^2) built from primitive Pythagorean triples."""

from .curves import (
    INFINITY,
    CurvePoint,
    FamilyCurve,
    add,
    count_points_mod_p,
    curve_from_triple,
    discriminant,
    is_on_curve,
    negate,
    scalar_mul,
)
from .descent import (
    SquareClassVector,
    descent_image,
    independence_rank,
    infinite_order_witness,
    search_points,
    square_class_equal,
)
from .rank import RankConfig, RankInterval, rank_interval
from .selmer import enumerate_selmer_candidates, selmer_group, selmer_upper_bound
from .torsion import is_halvable, is_torsion, torsion_subgroup, two_torsion_points, verify_no_order_four
from .triples import (
    PythagoreanTriple,
    TripleParams,
    canonicalize,
    gen_triples_even,
    gen_triples_odd,
    triple_from_abc,
    triple_from_params,
)

__version__ = "0.1.0"
