import threading
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from grothperm.emit import csv_text, fmt, pgm_text, read_pgm
from grothperm.pipedream import exact_distribution, sample_permutation
from grothperm.stats import (chi_square, chi_square_two_sample, empirical_law, ks_two_sample,
                             ks_vs_cdf, total_variation)
from grothperm.streams import geometric, indexed_map, stream, thread_budget


@given(st.dictionaries(st.integers(0, 20), st.floats(0, 1), min_size=1))
def test_tv_of_identical_laws_is_zero(law):
    assert total_variation(law, dict(law)) == 0


def test_tv_arrays_and_padding():
    assert total_variation([0.5, 0.5], [1.0]) == 0.5
    with pytest.raises(ValueError):
        total_variation([], [])


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=50))
def test_ks_of_sample_against_itself_is_zero(xs):
    assert ks_two_sample(xs, xs)[0] == 0


def test_ks_against_cdf():
    z = stream(0, 0).standard_normal(5000)
    stat, pv = ks_vs_cdf(z, "norm")
    assert stat < 0.03 and pv > 0.01
    with pytest.raises(ValueError):
        ks_vs_cdf([], "norm")


def test_chi_square_exact_n3_law_vs_large_sample():
    law = exact_distribution(3, Fraction(1, 2))
    perms = sorted(law)
    index = {w: k for k, w in enumerate(perms)}
    counts = np.zeros(len(perms))
    for s in range(250):
        g = stream(21, s)
        for _ in range(4000):
            counts[index[sample_permutation(3, 0.5, g)]] += 1
    _, pv, dof = chi_square(counts, [float(law[w]) for w in perms])
    assert dof == 5 and pv > 0.01


def test_chi_square_pools_small_bins():
    _, _, dof = chi_square([50, 50, 0, 0], [0.5, 0.4999, 1e-5, 9e-5])
    assert dof == 1
    with pytest.raises(ValueError):
        chi_square([0, 0], [0.5, 0.5])


def test_two_sample_chi_square_detects_difference():
    a = np.array([500, 500])
    assert chi_square_two_sample(a, a)[1] > 0.99
    assert chi_square_two_sample(a, np.array([300, 700]))[1] < 1e-6


def test_empirical_law():
    assert empirical_law([1, 1, 2, 4]) == {1: 0.5, 2: 0.25, 4: 0.25}


@given(arrays(np.int64, st.tuples(st.integers(1, 12), st.integers(1, 12)),
              elements=st.integers(0, 10**6)))
def test_pgm_round_trip(counts):
    text = pgm_text(counts, ["a comment"])
    gray = read_pgm(text)
    assert gray.shape == counts.shape
    assert gray.min() >= 0 and gray.max() <= 255
    if counts.max() > 0:
        assert np.all(gray[counts == counts.max()] == 255)
        assert np.all(gray[counts == 0] == 0)
        assert np.all(np.diff(gray.ravel()[np.argsort(counts.ravel(), kind="stable")]) >= 0)


def test_pgm_rejects_garbage():
    with pytest.raises(ValueError):
        read_pgm("P5\n1 1\n255\n0\n")
    with pytest.raises(ValueError):
        read_pgm("P2\n2 1\n255\n0\n")


def test_csv_and_fmt():
    assert csv_text(["a", "b"], [[1, 2]]) == "a,b\n1,2\n"
    assert fmt(0.1 + 0.2) == "0.3"


def test_streams_are_distinct_and_reproducible():
    a = stream(5, 0).random(4)
    assert np.array_equal(a, stream(5, 0).random(4))
    assert not np.array_equal(a, stream(5, 1).random(4))
    assert not np.array_equal(a, stream(6, 0).random(4))
    with pytest.raises(ValueError):
        stream(-1, 0)


def test_indexed_map_is_order_preserving_under_threads():
    fn = lambda i: (i, float(stream(3, i).random()))  # noqa: E731
    assert indexed_map(fn, range(50), 1) == indexed_map(fn, range(50), 8)


def test_indexed_map_uses_threads():
    seen = set()

    def fn(i):
        seen.add(threading.get_ident())
        sample_permutation(300, 0.5, stream(0, i))
        return i

    assert indexed_map(fn, range(32), 4) == list(range(32))
    assert threading.get_ident() not in seen


def test_thread_budget_env(monkeypatch):
    monkeypatch.setenv("GROTHPERM_THREADS", "3")
    assert thread_budget() == 3
    assert thread_budget(2) == 2
    monkeypatch.delenv("GROTHPERM_THREADS")
    assert thread_budget() == 1


def test_geometric_edges():
    u = np.array([0.0, 0.5, 0.999])
    assert np.all(geometric(u, 0.0) == 0)
