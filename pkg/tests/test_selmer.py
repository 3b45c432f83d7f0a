import pytest

from pythagorean_curves import curve_from_triple, enumerate_selmer_candidates, selmer_group, triple_from_abc
from pythagorean_curves.arith import REAL_PLACE, class_representatives, gf2_span, local_class
from pythagorean_curves.selmer import (
    bad_primes,
    homogeneous_space_point,
    homogeneous_space_solvable,
    _local_image_by_residues,
    local_image,
    selmer_upper_bound,
)

from conftest import small_curves
from oracles import local_image_by_x_tree

SMALL = [(3, 4, 5), (5, 12, 13), (15, 8, 17), (7, 24, 25)]


def curve(abc):
    return curve_from_triple(triple_from_abc(*abc))


def image_pairs(img):
    mask = (1 << img.width) - 1
    return {(v & mask, v >> img.width) for v in gf2_span(list(img.basis))}


@pytest.mark.parametrize("E", small_curves(12) + [curve((861, 7540, 7589))], ids=str)
def test_local_images_match_x_tree(E):
    for p in bad_primes(E):
        img = local_image(E, p)
        assert img.complete
        assert image_pairs(img) == local_image_by_x_tree(E, p), p


@pytest.mark.parametrize("E", small_curves(8), ids=str)
def test_selmer_dimension_by_brute_force(E):
    group = selmer_group(E)
    places = [REAL_PLACE] + bad_primes(E)
    images = {p: local_image_by_x_tree(E, p) for p in places[1:]}
    count = 0
    for v in range(1 << (2 * group.n)):
        d1, d2 = group.to_pair(v)
        ok = homogeneous_space_solvable(E, d1, d2, REAL_PLACE) and all(
            (local_class(d1, p), local_class(d2, p)) in images[p] for p in places[1:]
        )
        count += ok
    assert count == 2 ** group.dim


@pytest.mark.parametrize("E", small_curves(10) + [curve((861, 7540, 7589))], ids=str)
def test_residue_search_matches_x_tree(E):
    for p in bad_primes(E):
        image = local_image_by_x_tree(E, p)
        reps = class_representatives(p)
        for c1, d1 in enumerate(reps):
            for c2, d2 in enumerate(reps):
                assert homogeneous_space_solvable(E, d1, d2, p) == ((c1, c2) in image), (p, d1, d2)


@pytest.mark.parametrize("E", small_curves(8), ids=str)
def test_residue_fallback_matches_sampling(E):
    for p in bad_primes(E):
        target = 3 if p == 2 else 2
        exact = _local_image_by_residues(E, p, {}, target)
        assert exact.complete
        assert image_pairs(exact) == image_pairs(local_image(E, p))


def test_real_place(curve345):
    # x - e1 > 0 on all of E(R); d2 < 0 only between the two outer roots
    solvable = {(d1, d2) for d1 in (1, -1) for d2 in (1, -1) if homogeneous_space_solvable(curve345, d1, d2, REAL_PLACE)}
    assert solvable == {(1, 1), (1, -1)}


@pytest.mark.parametrize("abc,bound", [((3, 4, 5), 1), ((5, 12, 13), 1), ((7, 24, 25), 2), ((21, 20, 29), 2)])
def test_upper_bounds(abc, bound):
    assert selmer_upper_bound(curve(abc)) == bound


def test_candidates(curve345):
    cands = enumerate_selmer_candidates(curve345, 30)
    group = selmer_group(curve345)
    assert len(cands) == 4 ** group.n
    solvable = [c for c in cands if c.locally_solvable]
    assert len(solvable) == 2 ** group.dim
    by_pair = {(c.d1, c.d2): c for c in cands}
    assert by_pair[(2, -7)].global_witness is not None
    for c in solvable:
        assert c.global_witness is not None
        assert group.point_vector(c.global_witness) == group.pair_vector(c.d1, c.d2)


def test_homogeneous_space_point(curve345):
    P = homogeneous_space_point(curve345, 2, -7, 10)
    assert P is not None and curve345.rhs(P.x) == P.y ** 2
    assert homogeneous_space_point(curve345, -1, 1, 10) is None


def test_selmer_contains_point_images():
    E = curve((7, 24, 25))
    group = selmer_group(E)
    basis = {}
    from pythagorean_curves.arith import gf2_in_span, gf2_insert

    for v in group.basis:
        gf2_insert(basis, v)
    for P in [E.point(e, 0) for e in E.roots] + [E.point(625, 7 * 24 * 25)]:
        assert gf2_in_span(basis, group.point_vector(P))
