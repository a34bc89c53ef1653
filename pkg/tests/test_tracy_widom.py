import numpy as np
import pytest
from scipy.special import airy as scipy_airy

from grothperm.tracy_widom import TWQuadrature, airy, tw2_cdf, tw2_moments

# Published moments of the GUE Tracy-Widom law.
TW2_MEAN = -1.7710868074
TW2_SD = 0.9017731


def test_airy_matches_scipy():
    x = np.linspace(-30, 30, 3001)
    a, ap = airy(x)
    ref = scipy_airy(x)
    assert np.max(np.abs(a - ref[0])) < 1e-10
    assert np.max(np.abs(ap - ref[1])) < 1e-9
    pos = x > 0
    assert np.max(np.abs(a[pos] - ref[0][pos]) / ref[0][pos]) < 1e-12


def test_airy_far_tail_relative_accuracy():
    x = np.array([10.0, 20.0, 40.0])
    assert np.allclose(airy(x)[0], scipy_airy(x)[0], rtol=1e-12, atol=0)


def test_cdf_stable_under_refinement():
    for r in (-5.0, -2.0, 0.0, 2.0):
        assert abs(TWQuadrature(60).cdf(r) - TWQuadrature(120).cdf(r)) < 1e-10


def test_cdf_is_monotone_distribution():
    r = np.linspace(-8, 6, 57)
    F = tw2_cdf(r)
    assert np.all(np.diff(F) > 0)
    assert F[0] < 1e-8 and 1 - F[-1] < 1e-6


def test_moments_against_published_values():
    mean, sd = tw2_moments()
    assert abs(mean - TW2_MEAN) < 1e-8
    assert abs(sd - TW2_SD) < 1e-6


def test_moments_refinement():
    a = tw2_moments()
    b = tw2_moments(nodes=120, m=160)
    assert abs(a[0] - b[0]) < 1e-6 and abs(a[1] - b[1]) < 1e-6


def test_scalar_and_array_inputs():
    assert isinstance(tw2_cdf(0.0), float)
    assert tw2_cdf(np.zeros((2, 2))).shape == (2, 2)
