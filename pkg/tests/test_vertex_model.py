import itertools
from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from grothperm.perm_core import inversions
from grothperm.pipedream import exact_distribution, permutation_of
from grothperm.streams import stream
from grothperm.vertex_model import (exact_colored_law, sample_color_blind, sample_colored,
                                    trace_grid, weight)


def test_weights_are_stochastic():
    p = Fraction(2, 7)
    for a, b in itertools.product(range(4), repeat=2):
        total = sum(weight(p, a, b, c, d) for c, d in itertools.product(range(4), repeat=2))
        assert total == 1


def test_crossing_only_when_larger_color_below():
    p = Fraction(1, 3)
    assert weight(p, 3, 1, 3, 1) == p and weight(p, 3, 1, 1, 3) == 1 - p
    assert weight(p, 1, 3, 1, 3) == 0 and weight(p, 1, 3, 3, 1) == 1


def test_exact_vertex_law_equals_dream_law():
    for n in range(1, 5):
        assert exact_colored_law(n, Fraction(1, 3)) == exact_distribution(n, Fraction(1, 3))


@given(st.integers(1, 25), st.floats(0, 1), st.integers(0, 10**6))
def test_trace_grid_gives_reduced_effective_dream(n, p, seed):
    w, d, text = trace_grid(n, p, stream(seed, 0))
    assert permutation_of(d) == w
    assert d.num_crosses == inversions(w)
    assert text.splitlines()[0] == "i,j,in_bottom,in_left,out_top,out_right"
    assert w == sample_colored(n, p, stream(seed, 0))


def test_color_blind_sweep_has_exact_height_law():
    from grothperm.perm_core import height
    from grothperm.stats import chi_square
    n, samples = 5, 20_000
    law = exact_distribution(n, Fraction(1, 2))
    for x, y in ((2, 3), (3, 2), (4, 4)):
        exact = np.zeros(n + 2)
        for w, q in law.items():
            exact[height(w, x, y)] += float(q)
        obs = np.zeros(n + 2)
        for s in range(samples):
            cols = sample_color_blind(n, 0.5, x, stream(5, s))
            obs[int((cols >= y).sum())] += 1
        _, pv, _ = chi_square(obs, exact)
        assert pv > 0.001


def test_color_blind_rejects_bad_threshold():
    import pytest
    with pytest.raises(ValueError):
        sample_color_blind(4, 0.5, 0, stream(0, 0))
