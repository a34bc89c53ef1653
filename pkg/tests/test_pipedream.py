from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grothperm.perm_core import Permutation, demazure_product, inversions
from grothperm.pipedream import (PipeDream, boxes, cross_count_table, enumerate_dreams,
                                 exact_distribution, num_boxes, permutation_of, q_reduce,
                                 reduce, sample, sample_permutation, upsilon_bruteforce, word_of)
from grothperm.streams import stream

import oracles

FIG1 = [(1, 1), (1, 2), (1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 2), (5, 1)]


def dreams(nmax=9):
    return st.integers(1, nmax).flatmap(
        lambda n: st.tuples(st.just(n), st.lists(st.booleans(), min_size=num_boxes(n),
                                                 max_size=num_boxes(n))))


def test_worked_tiling():
    d = PipeDream.from_crosses(6, FIG1)
    assert str(permutation_of(d)) == "241653"
    assert str(q_reduce(d, 1.0)) == "241635"
    reduced, trace = reduce(d)
    assert sorted(trace.demoted) == [(1, 4), (2, 3), (4, 2)]
    assert reduced.num_crosses == 6 == inversions(permutation_of(d))
    assert word_of(d) == (5, 5, 3, 4, 1, 4, 2, 5, 4)


@given(dreams())
def test_all_routes_agree_with_oracle(args):
    n, bits = args
    d = PipeDream(n, np.array(bits, dtype=bool))
    ref = tuple(oracles.trace_dream(n, d.crosses()))
    for route in ("trace", "column", "pairs", "demazure"):
        assert tuple(permutation_of(d, route)) == ref


@given(dreams())
def test_nonreduced_trace_matches_oracle(args):
    n, bits = args
    d = PipeDream(n, np.array(bits, dtype=bool))
    assert tuple(q_reduce(d, 1.0)) == tuple(oracles.trace_dream(n, d.crosses(), reduce=False))
    assert q_reduce(d, 0.0) == permutation_of(d)


@given(dreams())
def test_reduced_dream_is_reduced(args):
    n, bits = args
    d = PipeDream(n, np.array(bits, dtype=bool))
    r, _ = reduce(d)
    w = permutation_of(d)
    assert permutation_of(r) == w
    assert r.num_crosses == inversions(w)


@given(dreams(7))
def test_word_demazure_product(args):
    n, bits = args
    d = PipeDream(n, np.array(bits, dtype=bool))
    assert demazure_product(word_of(d), n).inverse() == permutation_of(d)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40), st.floats(0, 1), st.sampled_from([0.0, 0.3, 1.0]), st.integers(0, 10**6))
def test_fast_sampler_equals_sample_then_reduce(n, p, q, seed):
    w1 = sample_permutation(n, p, stream(seed, 0), q=q)
    g = stream(seed, 0)
    w2 = q_reduce(sample(n, p, g), q, g)
    assert w1 == w2


def test_text_round_trip():
    d = PipeDream.from_crosses(6, FIG1)
    assert PipeDream.from_text(d.to_text()) == d
    assert d.to_text().startswith("n=6\n")


def test_enumeration_counts():
    for n in range(1, 6):
        assert sum(1 for _ in enumerate_dreams(n)) == 2 ** comb(n, 2)
    with pytest.raises(ValueError):
        next(enumerate_dreams(9))


def test_grothendieck_values_match_divided_differences():
    for n in (3, 4):
        for beta in (0, 1, 2):
            ref = oracles.grothendieck_specializations(n, beta)
            for w, val in ref.items():
                assert upsilon_bruteforce(Permutation(w), beta) == val


def test_partition_function_is_power_of_two():
    for n in range(2, 7):
        assert sum(upsilon_bruteforce(w, 1) for w in cross_count_table(n)) == 2 ** comb(n, 2)


def test_exact_distribution_is_normalized_and_exact():
    law = exact_distribution(4, "1/3")
    assert sum(law.values()) == 1
    assert all(isinstance(v, Fraction) for v in law.values())
    assert len(law) == 24


def test_exact_law_weights_by_upsilon_at_half():
    n = 4
    law = exact_distribution(n, Fraction(1, 2))
    for w, prob in law.items():
        assert prob == upsilon_bruteforce(w, 1) / 2 ** comb(n, 2)


def test_box_layout():
    assert boxes(3) == [(1, 1), (1, 2), (2, 1)]
    with pytest.raises(IndexError):
        PipeDream.from_crosses(4, [(3, 2)])


def test_invalid_probability():
    with pytest.raises(ValueError):
        sample_permutation(4, 1.5, stream(0, 0))
