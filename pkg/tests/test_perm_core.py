import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grothperm.perm_core import (Permutation, check_composition, cross_product, demazure_product,
                                 displacement, height, height_table, inversions, layered, w0_block)

import oracles

perms = st.integers(1, 12).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@given(perms)
def test_inversions_match_quadratic_count(w):
    assert inversions(Permutation(w)) == oracles.inversions(w)


@given(perms)
def test_displacement_brackets_inversions(w):
    p = Permutation(w)
    assert displacement(p) <= 2 * inversions(p) <= 2 * displacement(p)


@given(perms, st.data())
def test_height_table_matches_definition(w, data):
    p = Permutation(w)
    T = height_table(p)
    n = p.n
    x = data.draw(st.integers(1, n))
    y = data.draw(st.integers(1, n))
    assert T[x, y] == height(p, x, y) == oracles.height(w, x, y)


@given(perms)
def test_inverse_and_product(w):
    p = Permutation(w)
    assert p * p.inverse() == Permutation.identity(p.n)
    assert p.inverse().inverse() == p


def test_parse_and_str():
    w = Permutation.parse("241653")
    assert list(w) == [2, 4, 1, 6, 5, 3] and str(w) == "241653"
    assert Permutation.parse("10 1 2 3 4 5 6 7 8 9")[1] == 10
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


def test_demazure_worked_word():
    assert str(demazure_product((5, 5, 3, 4, 1, 2, 4, 5, 4), 6)) == "316254"


@given(st.integers(2, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n - 1), max_size=25))))
def test_demazure_matches_position_fold_of_reversed_word(args):
    n, word = args
    assert tuple(demazure_product(word, n)) == oracles.demazure_by_positions(word[::-1], n)


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n - 1), max_size=12))))
def test_demazure_is_idempotent_on_repeats(args):
    n, word = args
    doubled = [r for r in word for _ in range(2)]
    assert demazure_product(doubled, n) == demazure_product(word, n)


def test_demazure_rejects_bad_letter():
    with pytest.raises(ValueError):
        demazure_product([3], 3)


def test_layered_and_w0_block():
    assert str(layered((1, 3))) == "1432"
    assert str(layered((2, 1))) == "213"
    assert str(w0_block(1, 2)) == "132"
    assert w0_block(0, 4) == Permutation.longest(4)
    with pytest.raises(ValueError):
        check_composition((1, 0, 2))


def test_cross_product_is_block_sum():
    u, w = Permutation.parse("21"), Permutation.parse("132")
    assert str(cross_product(u, w)) == "21354"


@settings(max_examples=30)
@given(perms)
def test_permutation_is_hashable_value(w):
    assert hash(Permutation(w)) == hash(Permutation(np.array(w)))
