"""Reproducible random streams and a thread-count independent map.

Every Monte Carlo sample (or fixed-size batch of samples) gets its own
Philox stream keyed by ``(seed, index)``.  Philox is counter based, so the
stream of sample ``i`` does not depend on which worker produced it or in
which order workers ran.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

import numpy as np

T = TypeVar("T")

THREADS_ENV = "GROTHPERM_THREADS"
_MASK64 = (1 << 64) - 1


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for sample ``index`` under master ``seed``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be nonnegative")
    key = ((index & _MASK64) << 64) | (seed & _MASK64)
    return np.random.Generator(np.random.Philox(key=key))


def thread_budget(threads: int | None = None) -> int:
    """Resolve the worker count from an explicit value or the environment."""
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    return max(1, int(threads))


def indexed_map(fn: Callable[[int], T], indices: Iterable[int],
                threads: int | None = None) -> list[T]:
    """Evaluate ``fn(i)`` for each index, returning results in index order.

    The numba kernels release the GIL, so threads give real parallelism;
    results never depend on the worker count.
    """
    indices = list(indices)
    workers = thread_budget(threads)
    if workers == 1 or len(indices) < 2:
        return [fn(i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, indices))


def geometric(u: np.ndarray, p: float) -> np.ndarray:
    """Geometric(p) draws on {0,1,...} with P(G=m) = (1-p) p^m, by inversion.

    ``u`` holds uniforms in [0,1); ``1-u`` is used so the argument of the
    logarithm stays in (0,1].
    """
    if p <= 0.0:
        return np.zeros(np.shape(u), dtype=np.int64)
    if p >= 1.0:
        raise ValueError("geometric draws need p < 1")
    return np.floor(np.log1p(-np.asarray(u)) / np.log(p)).astype(np.int64)
