import random

import pytest

from pythagorean_curves import add, curve_from_triple, gen_triples_even, scalar_mul, search_points


def small_curves(max_ij: int = 12):
    return [curve_from_triple(t) for t in gen_triples_even(max_ij)]


def generators(curve, height: int = 60):
    a, b, c = curve.triple.abc
    return [curve.point(c * c, a * b * c)] + [P for P in search_points(curve, height) if P.y != 0]


def random_point(curve, gens, rng: random.Random, spread: int = 2):
    """A random small combination of the searched points and 2-torsion."""
    P = curve.point(*rng.choice([(0, 0), (curve.e2, 0), (curve.e3, 0)])) if rng.random() < 0.3 else scalar_mul(curve, 0, gens[0])
    for g in gens[:3]:
        P = add(curve, P, scalar_mul(curve, rng.randint(-spread, spread), g))
    return P


@pytest.fixture(scope="session")
def curve345():
    from pythagorean_curves import triple_from_abc

    return curve_from_triple(triple_from_abc(3, 4, 5))
