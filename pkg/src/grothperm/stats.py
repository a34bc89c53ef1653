"""Goodness-of-fit helpers on top of scipy.stats."""
from __future__ import annotations

from typing import Callable, Mapping

import numpy as np
from scipy import stats


def _merge_small(expected: np.ndarray, *observed: np.ndarray, minimum: float = 5.0):
    """Pool adjacent bins (in the given order) until every expected count is
    at least ``minimum``; the remainder joins the last pooled bin."""
    groups, cur = [], []
    acc = 0.0
    for k, e in enumerate(expected):
        cur.append(k)
        acc += e
        if acc >= minimum:
            groups.append(cur)
            cur, acc = [], 0.0
    if cur:
        if groups:
            groups[-1].extend(cur)
        else:
            groups.append(cur)
    pool = lambda a: np.array([a[g].sum() for g in groups], dtype=float)  # noqa: E731
    return pool(expected), [pool(o) for o in observed]


def chi_square(observed, expected_prob) -> tuple[float, float, int]:
    """Pearson goodness of fit of counts against probabilities.

    Returns (statistic, p-value, degrees of freedom)."""
    obs = np.asarray(observed, dtype=float)
    prob = np.asarray(expected_prob, dtype=float)
    if obs.sum() == 0:
        raise ValueError("empty sample")
    exp = prob / prob.sum() * obs.sum()
    exp, (obs,) = _merge_small(exp, obs)
    if len(exp) < 2:
        return 0.0, 1.0, 0
    res = stats.chisquare(obs, exp)
    return float(res.statistic), float(res.pvalue), len(exp) - 1


def chi_square_two_sample(a, b) -> tuple[float, float, int]:
    """Homogeneity test of two count vectors over the same categories."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.sum() == 0 or b.sum() == 0:
        raise ValueError("empty sample")
    pooled = (a + b) * min(a.sum(), b.sum()) / (a.sum() + b.sum())
    _, (a, b) = _merge_small(pooled, a, b)
    if len(a) < 2:
        return 0.0, 1.0, 0
    res = stats.chi2_contingency(np.vstack([a, b]), correction=False)
    return float(res.statistic), float(res.pvalue), int(res.dof)


def ks_two_sample(a, b) -> tuple[float, float]:
    if len(a) == 0 or len(b) == 0:
        raise ValueError("empty sample")
    res = stats.ks_2samp(a, b)
    return float(res.statistic), float(res.pvalue)


def ks_vs_cdf(samples, cdf: Callable | str) -> tuple[float, float]:
    if len(samples) == 0:
        raise ValueError("empty sample")
    res = stats.kstest(samples, cdf)
    return float(res.statistic), float(res.pvalue)


def total_variation(a, b) -> float:
    """Half the L1 distance between two laws given as mappings or arrays."""
    if isinstance(a, Mapping) or isinstance(b, Mapping):
        a, b = dict(a), dict(b)
        keys = set(a) | set(b)
        if not keys:
            raise ValueError("empty laws")
        return 0.5 * sum(abs(a.get(k, 0) - b.get(k, 0)) for k in keys)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    m = max(len(a), len(b))
    if m == 0:
        raise ValueError("empty laws")
    return 0.5 * float(np.abs(np.pad(a, (0, m - len(a))) - np.pad(b, (0, m - len(b)))).sum())


def empirical_law(values) -> dict:
    vals, counts = np.unique(np.asarray(values), return_counts=True)
    total = counts.sum()
    return {int(v): c / total for v, c in zip(vals, counts)}
