import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grothperm.perm_core import height
from grothperm.pipedream import exact_distribution
from grothperm.streams import geometric, stream
from grothperm.tasep import (SchurSpec, TasepState, _partitions, displacement_batch,
                             exact_exit_law, exact_height_law, exit_csv, exit_times_batch,
                             height_cdf_via_tasep, inverse_v_sum, limit_constants,
                             run_with_exit_boundary, schur_marginal_lastpart, schur_ones, speed,
                             step, trajectory_csv)

import oracles

FIG5_JUMPS = [(2, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 0), (0, 0, 0), (0, 0, 0)]


def test_drawn_jumps_give_worked_exit_times():
    rec = run_with_exit_boundary(3, 6, 0.5, jumps=FIG5_JUMPS)
    assert rec.exit_times == (2, 3, 5)
    assert rec.trajectory[:4] == ((3, 2, 1), (5, 2, 1), (5, 3, 1), (5, 4, 2))


def test_seed_reproduces_drawn_trajectory():
    seeded = run_with_exit_boundary(3, 6, 0.5, stream(380, 0))
    assert seeded == run_with_exit_boundary(3, 6, 0.5, jumps=FIG5_JUMPS)


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.integers(0, 10**6))
def test_step_keeps_exclusion(jumps, seed):
    k = len(jumps)
    s = TasepState.step_initial(k)
    s = step(s, 0.5, jumps=jumps)
    for t in range(5):
        s = step(s, 0.7, stream(seed, t))
    assert all(a > b for a, b in zip(s.positions, s.positions[1:]))


def test_blocked_particle_moves_to_gap():
    s = step(TasepState((5, 3)), 0.5, jumps=(0, 9))
    assert s.positions == (5, 4)


def test_state_validation():
    with pytest.raises(ValueError):
        TasepState((1, 2))


@given(st.integers(1, 8), st.integers(0, 10**6), st.data())
def test_exit_times_increase_and_bounded(n, seed, data):
    k = data.draw(st.integers(1, n))
    rec = run_with_exit_boundary(k, n, 0.6, stream(seed, 0))
    T = rec.exit_times
    assert all(1 <= t <= n for t in T)
    assert all(a < b for a, b in zip(T, T[1:]))


def test_batch_matches_single_runs_in_law():
    T = exit_times_batch(3, 6, 0.5, 50_000, stream(2, 0))
    law = exact_exit_law(3, 6, Fraction(1, 2))
    for key in [(2, 3, 5), (1, 2, 3), (3, 4, 5)]:
        emp = np.mean(np.all(T == np.array(key), axis=1))
        assert abs(emp - float(law.get(key, 0))) < 0.01


def test_exact_exit_law_normalized():
    for n in range(1, 6):
        for k in range(1, n + 1):
            assert sum(exact_exit_law(k, n, "1/3").values()) == 1


def test_exact_height_law_matches_dream_law():
    n = 4
    law = exact_distribution(n, Fraction(1, 3))
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            ref = {}
            for w, q in law.items():
                h = height(w, x, y)
                ref[h] = ref.get(h, 0) + q
            got = exact_height_law(n, x, y, Fraction(1, 3))
            assert {h: q for h, q in ref.items() if q} == {h: q for h, q in got.items() if q}


def test_height_cdf_estimate():
    n, x, y, h = 4, 2, 2, 1
    law = exact_height_law(n, x, y, Fraction(1, 2))
    exact = float(sum(q for k, q in law.items() if k <= h))
    est, se = height_cdf_via_tasep(n, x, y, h, 0.5, 40_000, seed=3)
    assert abs(est - exact) < 4 * se + 1e-9


def test_geometric_law():
    g = geometric(stream(0, 0).random(200_000), 0.4)
    assert abs(g.mean() - 0.4 / 0.6) < 0.01
    assert abs(np.mean(g == 0) - 0.6) < 0.005


def test_schur_ones_counts_tableaux():
    for lam in [(1,), (2, 1), (3, 1, 1), (2, 2), (3, 2)]:
        for m in range(1, 4):
            assert schur_ones(lam, m) == oracles.ssyt_count(lam, m)


def test_partitions_enumeration():
    assert sorted(_partitions(5, 2)) == [(3, 2), (4, 1), (5,)]
    assert sum(1 for _ in _partitions(10, 10)) == 42


def test_schur_marginal_normalized():
    law = schur_marginal_lastpart(SchurSpec(2, 3, 0.5))
    assert abs(sum(law.values()) - 1) < 1e-7


def test_displacement_matches_schur_marginal():
    law = schur_marginal_lastpart(SchurSpec(2, 3, 0.5))
    d = displacement_batch(2, 3, 0.5, 200_000, stream(4, 0))
    emp = np.bincount(d) / len(d)
    tv = 0.5 * sum(abs(law.get(k, 0) - (emp[k] if k < len(emp) else 0))
                   for k in set(law) | set(range(len(emp))))
    assert tv < 0.01


def test_limit_constants_consistency():
    c = limit_constants(0.3, 2.0, 0.4)
    assert math.isclose(1 / c.v1 + 1 / c.v2, inverse_v_sum(0.3, 2.0, 0.4), rel_tol=1e-12)
    assert math.isclose(c.c, speed(0.3, 2.0, 0.4))
    assert 0 < c.z_cr < 1
    assert speed(1, 1, 0.5) == 0
    with pytest.raises(ValueError):
        limit_constants(1, 1.5, 0.5)


def test_limit_speed_against_simulation():
    # the mean approaches c L with a correction of order L^{1/3}
    m, t, p = 1, 5, 0.5
    gaps = []
    for L in (100, 400):
        d = displacement_batch(m * L, t * L, p, 64, stream(9, L))
        gaps.append(abs(d.mean() / L - speed(m, t, p)))
        assert gaps[-1] < 3 * L ** (-2 / 3)
    assert gaps[1] < gaps[0]


def test_csv_emitters():
    rec = run_with_exit_boundary(3, 6, 0.5, jumps=FIG5_JUMPS)
    assert trajectory_csv(rec).splitlines()[0] == "t,xi_1,xi_2,xi_3"
    assert exit_csv(rec).splitlines() == ["i,T_exit", "1,2", "2,3", "3,5"]
