from math import gcd

import pytest

from pythagorean_curves import (
    PythagoreanTriple,
    TripleParams,
    canonicalize,
    gen_triples_even,
    gen_triples_odd,
    triple_from_abc,
    triple_from_params,
)
from pythagorean_curves.triples import Mode

TABLE1 = [
    (2, 1, 3, 4, 5), (3, 2, 5, 12, 13), (4, 1, 15, 8, 17), (4, 3, 7, 24, 25),
    (5, 2, 21, 20, 29), (5, 4, 9, 40, 41), (6, 1, 35, 12, 37), (6, 5, 11, 60, 61),
    (7, 2, 45, 28, 53), (7, 4, 33, 56, 65), (7, 6, 13, 84, 85), (8, 1, 63, 16, 65),
    (8, 3, 55, 48, 73), (8, 5, 39, 80, 89), (8, 7, 15, 112, 113), (9, 2, 77, 36, 85),
    (9, 4, 65, 72, 97), (9, 8, 17, 144, 145),
]


def brute_force(limit_c: int) -> set[tuple[int, int, int]]:
    out = set()
    for c in range(1, limit_c + 1):
        for a in range(1, c):
            b2 = c * c - a * a
            b = int(round(b2 ** 0.5))
            if b * b == b2 and a % 2 == 1 and gcd(a, b) == 1:
                out.add((a, b, c))
    return out


def test_table1():
    got = [(t.params.i, t.params.j, t.a, t.b, t.c) for t in gen_triples_even(10)]
    assert got == TABLE1


def test_largest_table1_row():
    assert triple_from_params(9, 8).abc == (17, 144, 145)


def test_inclusive_bound():
    assert [t.abc for t in gen_triples_even(2, inclusive=True)] == [(3, 4, 5)]
    assert gen_triples_even(3) == gen_triples_even(2, inclusive=True)


def test_odd_form():
    assert triple_from_params(3, 1, Mode.ODD_FORM).abc == (4, 3, 5)
    assert triple_from_params(5, 3, Mode.ODD_FORM).abc == (8, 15, 17)
    for t in gen_triples_odd(15):
        assert t.a % 2 == 0 and t.a ** 2 + t.b ** 2 == t.c ** 2


@pytest.mark.parametrize("n", [5, 12, 25])
def test_both_forms_cover_all_primitive_triples(n):
    even = {t.abc for t in gen_triples_even(n)}
    odd = {canonicalize(t).abc for t in gen_triples_odd(2 * n)}
    # every primitive triple with c < n^2 / 2 comes from either form
    bound = n * n // 2
    oracle = {abc for abc in brute_force(bound)}
    assert {abc for abc in even if abc[2] <= bound} == oracle
    assert {abc for abc in odd if abc[2] <= bound} == oracle


def test_count_1000():
    assert len(gen_triples_even(1000)) == 202461


@pytest.mark.parametrize("abc", [(3, 4, 5), (4, 3, 5), (861, 7540, 7589), (8, 15, 17), (20, 21, 29)])
def test_triple_from_abc_round_trip(abc):
    t = triple_from_abc(*abc)
    assert t.abc == abc
    assert triple_from_params(t.params.i, t.params.j, t.mode).abc == abc


@pytest.mark.parametrize("bad", [(3, 4, 6), (6, 8, 10), (0, 1, 1), (-3, 4, 5)])
def test_invalid_triples(bad):
    with pytest.raises(ValueError):
        PythagoreanTriple(*bad)


@pytest.mark.parametrize("ij", [(2, 2), (1, 2), (4, 2), (3, 0)])
def test_invalid_params(ij):
    with pytest.raises(ValueError):
        TripleParams(*ij)


def test_bad_bound():
    with pytest.raises(ValueError):
        gen_triples_even(1)
