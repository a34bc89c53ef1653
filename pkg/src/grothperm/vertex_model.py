"""Colored stochastic six-vertex model on the staircase.

A vertex receives color ``a`` from below and ``b`` from the left and emits
``c`` upward and ``d`` to the right.  Color 0 means no pipe.  When the
larger color arrives from below the two pipes cross with probability p and
otherwise bounce; when the larger color arrives from the left they always
bounce (the smaller color turns up).

The sampler sweeps the anti-diagonals j-i = const, left to right, holding
only the frontier: the color on the right edge of the last processed box of
every row and on the top edge of the last processed box of every column.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np
from numba import njit

from .perm_core import Permutation
from .pipedream import PipeDream, box_index, num_boxes


def weight(p, a: int, b: int, c: int, d: int):
    """Stochastic vertex weight w_p(a,b; c,d)."""
    if sorted((a, b)) != sorted((c, d)):
        return 0 * p
    if a == b:
        return 1 + 0 * p
    if a > b:                          # larger color from below
        return p if (c, d) == (a, b) else 1 - p
    return 0 * p if (c, d) == (a, b) else 1 + 0 * p


def color_blind_weight(p, a: int, b: int, c: int, d: int):
    """Weights after identifying all colors >= x with 1 and the rest with 0."""
    return weight(p, a, b, c, d)


@njit(cache=True, nogil=True)
def _colored_sweep(n, u, p):
    """Frontier sweep.  ``u`` is a buffer of uniforms consumed one per vertex
    at which the larger color arrives from below (the only random vertices)."""
    row = np.arange(n + 1, dtype=np.int64)
    col = np.zeros(n + 1, dtype=np.int64)
    used = 0
    for tau in range(-(n - 1), n):
        for i in range(max(1, 1 - tau), n + 1):
            j = i + tau
            if i + j > n + 1:
                break
            if i + j == n + 1:
                col[j] = row[i]
                continue
            b = row[i]
            a = col[j]
            if a == 0 or b == 0:
                raise ValueError("empty edge inside the staircase")
            if a > b:
                coin = u[used]
                used += 1
                if coin < p:
                    continue            # cross: colors keep their directions
            row[i] = a
            col[j] = b
    w = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        w[j - 1] = col[j]
    return w, used


@njit(cache=True, nogil=True)
def _color_blind_sweep(n, x, u, p):
    """Occupation sweep for pipes of color >= x; returns 0/1 exit indicators."""
    row = np.zeros(n + 1, dtype=np.int8)
    col = np.zeros(n + 1, dtype=np.int8)
    for i in range(x, n + 1):
        row[i] = 1
    used = 0
    for tau in range(-(n - 1), n):
        for i in range(max(1, 1 - tau), n + 1):
            j = i + tau
            if i + j > n + 1:
                break
            if i + j == n + 1:
                col[j] = row[i]
                continue
            b = row[i]
            a = col[j]
            if a == b:
                continue
            if a == 1:
                coin = u[used]
                used += 1
                if coin < p:
                    continue
            row[i] = a
            col[j] = b
    return col[1:].copy(), used


def sample_colored(n: int, p: float, rng: np.random.Generator) -> Permutation:
    """Permutation read from the colors leaving the top boundary."""
    if not 0 <= p <= 1:
        raise ValueError("p outside [0,1]")
    u = rng.random(max(num_boxes(n), 1))
    w, _ = _colored_sweep(n, u, float(p))
    return Permutation(w)


def sample_color_blind(n: int, p: float, x: int, rng: np.random.Generator) -> np.ndarray:
    """Columns (1-based, increasing) where the pipes of color >= x exit.

    The number of exits at columns >= y has the law of H(x,y)."""
    if not 1 <= x <= n:
        raise ValueError(f"x={x} outside 1..{n}")
    u = rng.random(max(num_boxes(n), 1))
    occ, _ = _color_blind_sweep(n, x, u, float(p))
    return np.flatnonzero(occ) + 1


def exact_colored_law(n: int, p) -> dict[Permutation, Fraction]:
    """Exact law by branching over every random vertex of the sweep.

    Independent of the pipe-dream enumeration: only the vertex weights and
    the sweep order enter."""
    p = Fraction(p)
    law: dict[Permutation, Fraction] = {}
    order = []
    for tau in range(-(n - 1), n):
        for i in range(max(1, 1 - tau), n + 1):
            j = i + tau
            if i + j > n + 1:
                break
            order.append((i, j))

    def rec(k, row, col, mass):
        while k < len(order):
            i, j = order[k]
            k += 1
            if i + j == n + 1:
                col[j] = row[i]
                continue
            b, a = row[i], col[j]
            if a > b:
                for c, d in ((a, b), (b, a)):
                    wgt = weight(p, a, b, c, d)
                    if wgt:
                        r2, c2 = row.copy(), col.copy()
                        c2[j], r2[i] = c, d
                        rec(k, r2, c2, mass * wgt)
                return
            row[i], col[j] = a, b
        w = Permutation(col[1:])
        law[w] = law.get(w, 0) + mass

    rec(0, list(range(n + 1)), [0] * (n + 1), Fraction(1))
    return law


def trace_grid(n: int, p: float, rng: np.random.Generator):
    """Full-grid sweep keeping every vertex.

    Returns the effective pipe dream (crosses where pipes actually crossed)
    and a CSV with per-box incoming and outgoing colors."""
    u = rng.random(max(num_boxes(n), 1))
    row = list(range(n + 1))
    col = [0] * (n + 1)
    used = 0
    tiles = np.zeros(num_boxes(n), dtype=bool)
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["i", "j", "in_bottom", "in_left", "out_top", "out_right"])
    for tau in range(-(n - 1), n):
        for i in range(max(1, 1 - tau), n + 1):
            j = i + tau
            if i + j > n + 1:
                break
            if i + j == n + 1:
                col[j] = row[i]
                continue
            b, a = row[i], col[j]
            crossed = False
            if a > b:
                crossed = u[used] < p
                used += 1
            if not crossed:
                row[i], col[j] = a, b
            tiles[box_index(n, i, j)] = crossed
            out.writerow([i, j, a, b, col[j], row[i]])
    return Permutation(col[1:]), PipeDream(n, tiles), buf.getvalue()
