from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pythagorean_curves.arith import (
    REAL_PLACE,
    gf2_in_span,
    gf2_insert,
    gf2_nullspace,
    gf2_rank,
    gf2_span,
    is_local_square,
    is_rational_square,
    is_square,
    legendre,
    local_class,
    rational_sqrt,
    square_class_rep,
    valuation,
)

nonzero = st.integers(-10**6, 10**6).filter(bool)
rationals = st.builds(Fraction, nonzero, st.integers(1, 10**4))


def test_is_square_small():
    squares = {k * k for k in range(200)}
    for n in range(-5, 40000):
        assert is_square(n) == (n in squares)


def test_is_square_big():
    n = 10**40 + 12345
    assert is_square(n * n)
    assert not is_square(n * n + 1)


def test_rational_square():
    assert is_rational_square(Fraction(9, 49))
    assert not is_rational_square(Fraction(9, 50))
    assert rational_sqrt(Fraction(144, 25)) == Fraction(12, 5)
    with pytest.raises(ValueError):
        rational_sqrt(Fraction(2))


@given(rationals, rationals)
def test_square_class_rep_multiplicative(u, v):
    assert is_square(square_class_rep(u * v) * square_class_rep(u) * square_class_rep(v))


def test_valuation_and_legendre():
    assert valuation(48, 2) == 4
    assert valuation(250, 5) == 3
    for p in (3, 5, 7, 11, 13):
        residues = {k * k % p for k in range(1, p)}
        for a in range(1, p):
            assert legendre(a, p) == (1 if a in residues else -1)


@pytest.mark.parametrize("p", [REAL_PLACE, 2, 3, 5, 7, 13])
@given(u=rationals, v=rationals)
def test_local_class_is_a_homomorphism(p, u, v):
    assert local_class(u * v, p) == local_class(u, p) ^ local_class(v, p)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_local_square_oracle(p):
    # a p-adic unit square is a square mod p (mod 8 for p = 2); valuations must be even
    for n in range(1, 400):
        k = valuation(n, p)
        u = n // p**k
        if p == 2:
            expected = k % 2 == 0 and u % 8 == 1
        else:
            expected = k % 2 == 0 and legendre(u, p) == 1
        assert is_local_square(n, p) == expected, n


def test_real_place():
    assert is_local_square(Fraction(3, 7), REAL_PLACE)
    assert not is_local_square(Fraction(-3, 7), REAL_PLACE)


@given(st.lists(st.integers(0, 255), max_size=10))
def test_gf2_nullspace_annihilates(rows):
    null = gf2_nullspace(rows, 8)
    assert len(null) + gf2_rank(rows) == 8
    for v in null:
        for r in rows:
            assert bin(v & r).count("1") % 2 == 0


@given(st.lists(st.integers(1, 63), max_size=6))
def test_gf2_span(vectors):
    basis: dict[int, int] = {}
    for v in vectors:
        gf2_insert(basis, v)
    span = gf2_span(list(basis.values()))
    assert len(span) == 2 ** len(basis) == len(set(span))
    assert all(gf2_in_span(basis, v) for v in span)
    assert all(gf2_in_span(basis, v) == (v in span) for v in range(64))
