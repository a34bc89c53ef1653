"""The non-reduced model: every cross of a Bernoulli(p) dream is kept.

Pipe i then performs an independent walk, so w^{-1}_i has an explicit law
built from two terminating hypergeometric-type sums F1 and F2.
"""
from __future__ import annotations

import math
from fractions import Fraction
from math import comb

import numpy as np

from .perm_core import displacement, inversions
from .pipedream import sample_permutation
from .streams import indexed_map, stream

KAPPA = 2 * math.sqrt(2) / (3 * math.sqrt(math.pi))
LOWER = 2 / (3 * math.sqrt(math.pi))
UPPER = 4 / (3 * math.sqrt(math.pi))


def _coerce(p):
    if isinstance(p, float):
        return p
    return Fraction(p)


def _sum(terms, p):
    if isinstance(p, float):
        return math.fsum(terms)
    return sum(terms, Fraction(0))


def F1(i: int, j: int, p):
    """sum_k C(i-1,k) C(j-1,k) (1-p)^{2k+1} p^{i+j-2-2k}."""
    p = _coerce(p)
    return _sum([comb(i - 1, k) * comb(j - 1, k) * (1 - p) ** (2 * k + 1)
                 * p ** (i + j - 2 - 2 * k) for k in range(min(i, j))], p)


def F2(s: int, n: int, p):
    """sum_k C(s-2,k) C(n,k+1) (1-p)^{2k+2} p^{n+s-3-2k}."""
    p = _coerce(p)
    return _sum([comb(s - 2, k) * comb(n, k + 1) * (1 - p) ** (2 * k + 2)
                 * p ** (n + s - 3 - 2 * k) for k in range(max(s - 1, 0))], p)


def exit_law(n: int, i: int, p) -> dict[int, object]:
    """Law of the column where pipe i exits, j = 1..n."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    p = _coerce(p)
    out = {}
    for j in range(1, n + 1):
        val = F1(i, j, p)
        if i + j == n + 1:
            val += p ** n
        elif i + j > n + 1:
            val += F2(i + j - n, n, p)
        out[j] = val
    return out


def expected_abs_displacement(n: int, i: int, p) -> float:
    """E|i - w^{-1}_i| summed exactly from the exit law."""
    law = exit_law(n, i, float(p))
    return math.fsum(abs(i - j) * q for j, q in law.items())


def asymptotic_abs_displacement(i: int, p: float) -> float:
    return math.sqrt(4 * i / math.pi * p / (1 - p))


def sample_nonreduced(n: int, p: float, rng: np.random.Generator):
    """Permutation of a Bernoulli(p) dream traced with no demotions."""
    return sample_permutation(n, p, rng, q=1.0)


def inversion_scaling_experiment(n: int, p: float, samples: int, seed: int = 0,
                                 threads: int | None = None):
    """Mean inv/n^{3/2} and dis/n^{3/2} with standard errors.

    Returns ``((inv_mean, inv_se), (dis_mean, dis_se))``.  Each sample is
    checked against dis/2 <= inv <= dis."""
    def one(s):
        w = sample_nonreduced(n, p, stream(seed, s))
        a, d = inversions(w), displacement(w)
        if not d <= 2 * a <= 2 * d:
            raise AssertionError("displacement/inversion inequality violated")
        return a, d

    res = np.array(indexed_map(one, range(samples), threads), dtype=float) / n ** 1.5
    se = res.std(axis=0, ddof=1) / math.sqrt(samples) if samples > 1 else np.zeros(2)
    return (float(res[:, 0].mean()), float(se[0])), (float(res[:, 1].mean()), float(se[1]))
