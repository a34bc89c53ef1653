"""Pipe dreams on the staircase {(i,j): i+j <= n}.

Geometry: row i grows downward, column j rightward.  Pipe c enters from
the left edge in row c; the boxes with i+j = n+1 are fixed half-bumps that
turn the incoming pipe upward.  A cross tile passes left->right and
bottom->top; an elbow sends left->top and bottom->right.  The color leaving
the top of column j is ``w(D)_j``.

Tiles are stored as a flat boolean array over boxes in row-major staircase
order: box (i,j) has index ``(i-1)*n - (i-1)*i//2 + (j-1)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np
from numba import njit

from .perm_core import Permutation, demazure_product, inversions

ENUM_CAP = 7


def num_boxes(n: int) -> int:
    return n * (n - 1) // 2


def box_index(n: int, i: int, j: int) -> int:
    if not (i >= 1 and j >= 1 and i + j <= n):
        raise IndexError(f"box ({i},{j}) not in the staircase of order {n}")
    return (i - 1) * n - (i - 1) * i // 2 + (j - 1)


def boxes(n: int) -> list[tuple[int, int]]:
    """Boxes in storage (row-major) order."""
    return [(i, j) for i in range(1, n) for j in range(1, n - i + 1)]


# --- kernels ---------------------------------------------------------------

@njit(cache=True, nogil=True)
def _row_offset(n, i):
    return (i - 1) * n - (i - 1) * i // 2


@njit(cache=True, nogil=True)
def _column_sweep(n, tiles, qu, q):
    """Trace colors column by column, bottom to top.

    At a cross tile the pipes pass through when the left color is the
    smaller one (they have not met yet).  Otherwise they already crossed
    and pass through only when ``qu[box] < q``; with q=0 this is the usual
    reduction, with q=1 no cross is ever demoted.
    """
    w = np.empty(n, dtype=np.int64)
    row = np.arange(n + 1, dtype=np.int64)
    for j in range(1, n):
        up = row[n - j + 1]
        for i in range(n - j, 0, -1):
            idx = _row_offset(n, i) + j - 1
            left = row[i]
            if tiles[idx] and (left < up or qu[idx] < q):
                continue
            row[i] = up
            up = left
        w[j - 1] = up
    w[n - 1] = row[1]
    return w


@njit(cache=True, nogil=True)
def _row_sweep(n, tiles, qu, q):
    """Same rule as ``_column_sweep`` with rows processed bottom to top, each
    left to right, so the tile array is read contiguously.  ``col[j]``
    carries the color on the top edge of the last box processed in column j;
    the half-bump ending row i hands its color to column n-i+1."""
    use_q = 0.0 < q < 1.0
    always = q >= 1.0
    col = np.zeros(n + 1, dtype=np.int64)
    col[1] = n
    for i in range(n - 1, 0, -1):
        left = i
        base = _row_offset(n, i) - 1
        for j in range(1, n - i + 1):
            below = col[j]
            # branch-free select: random tiles defeat the branch predictor
            c = (tiles[base + j]) & ((left < below) | always | (use_q and qu[base + j] < q))
            col[j] = below if c else left
            left = left if c else below
        col[n - i + 1] = left
    return col[1:].copy()


@njit(cache=True, nogil=True)
def _row_sweep_uniform(n, u, p, qu, q):
    """``_row_sweep`` with the tiles drawn on the fly: box k is a cross when
    ``u[k] < p``."""
    use_q = 0.0 < q < 1.0
    always = q >= 1.0
    col = np.zeros(n + 1, dtype=np.int64)
    col[1] = n
    for i in range(n - 1, 0, -1):
        left = i
        base = _row_offset(n, i) - 1
        for j in range(1, n - i + 1):
            below = col[j]
            # branch-free select: random tiles defeat the branch predictor
            c = (u[base + j] < p) & ((left < below) | always | (use_q and qu[base + j] < q))
            col[j] = below if c else left
            left = left if c else below
        col[n - i + 1] = left
    return col[1:].copy()


@njit(cache=True, nogil=True)
def _diagonal_sweep(n, tiles, qu, q):
    """Same resolution rule as ``_column_sweep`` but visiting boxes along
    diagonals j-i = const, left to right, keeping an O(n) frontier."""
    row = np.arange(n + 1, dtype=np.int64)   # color on the right edge of the last box in row i
    col = np.zeros(n + 1, dtype=np.int64)    # color on the top edge of the last box in column j
    for tau in range(-(n - 1), n):
        # boxes with j - i = tau, plus the half-bump on that diagonal
        i_lo = max(1, 1 - tau)
        for i in range(i_lo, n + 1):
            j = i + tau
            if j < 1 or i + j > n + 1:
                break
            if i + j == n + 1:
                col[j] = row[i]
                continue
            left = row[i]
            below = col[j]
            idx = _row_offset(n, i) + j - 1
            if tiles[idx] and (left < below or qu[idx] < q):
                continue
            row[i] = below
            col[j] = left
    w = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        w[j - 1] = col[j]
    return w


@njit(cache=True, nogil=True)
def _reduce_pairs(n, tiles):
    """Reduction with an explicit table of pipe pairs that already crossed.

    Visits columns left to right, each bottom to top.  Returns the mask of
    demoted crosses and the resulting permutation.
    """
    crossed = np.zeros((n + 1, n + 1), dtype=np.bool_)
    demoted = np.zeros(tiles.shape[0], dtype=np.bool_)
    w = np.empty(n, dtype=np.int64)
    row = np.arange(n + 1, dtype=np.int64)
    for j in range(1, n):
        up = row[n - j + 1]
        for i in range(n - j, 0, -1):
            idx = _row_offset(n, i) + j - 1
            left = row[i]
            a, b = min(left, up), max(left, up)
            if tiles[idx]:
                if not crossed[a, b]:
                    crossed[a, b] = True
                    continue
                demoted[idx] = True
            row[i] = up
            up = left
        w[j - 1] = up
    w[n - 1] = row[1]
    return demoted, w


@njit(cache=True, nogil=True)
def _crossing_counts(n, tiles):
    counts = np.zeros((n + 1, n + 1), dtype=np.int64)
    row = np.arange(n + 1, dtype=np.int64)
    for j in range(1, n):
        up = row[n - j + 1]
        for i in range(n - j, 0, -1):
            idx = _row_offset(n, i) + j - 1
            left = row[i]
            if tiles[idx]:
                counts[min(left, up), max(left, up)] += 1
                continue
            row[i] = up
            up = left
    return counts


@njit(cache=True)
def _enumerate_all(n):
    """Permutation and cross count of every dream, indexed by bitmask."""
    nb = n * (n - 1) // 2
    total = 1 << nb
    perms = np.empty((total, n), dtype=np.int8)
    ncross = np.empty(total, dtype=np.int8)
    tiles = np.zeros(nb, dtype=np.bool_)
    qu = np.ones(nb)
    for mask in range(total):
        c = 0
        for k in range(nb):
            bit = (mask >> k) & 1
            tiles[k] = bit == 1
            c += bit
        perms[mask] = _column_sweep(n, tiles, qu, 0.0)
        ncross[mask] = c
    return perms, ncross


# --- public types ----------------------------------------------------------

class PipeDream:
    """A cross/elbow tiling of the staircase of order n."""

    __slots__ = ("n", "tiles")

    def __init__(self, n: int, tiles=None):
        if n < 1:
            raise ValueError("order must be positive")
        self.n = n
        nb = num_boxes(n)
        if tiles is None:
            tiles = np.zeros(nb, dtype=bool)
        tiles = np.ascontiguousarray(tiles, dtype=bool)
        if tiles.shape != (nb,):
            raise ValueError(f"expected {nb} tiles, got {tiles.shape}")
        tiles.flags.writeable = False
        self.tiles = tiles

    @classmethod
    def from_crosses(cls, n: int, crosses) -> "PipeDream":
        t = np.zeros(num_boxes(n), dtype=bool)
        for i, j in crosses:
            t[box_index(n, i, j)] = True
        return cls(n, t)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "PipeDream":
        return cls(n, np.array([(mask >> k) & 1 for k in range(num_boxes(n))], dtype=bool))

    def is_cross(self, i: int, j: int) -> bool:
        return bool(self.tiles[box_index(self.n, i, j)])

    def crosses(self) -> list[tuple[int, int]]:
        return [b for b, t in zip(boxes(self.n), self.tiles) if t]

    @property
    def num_crosses(self) -> int:
        return int(self.tiles.sum())

    def __eq__(self, other):
        return isinstance(other, PipeDream) and self.n == other.n and \
            np.array_equal(self.tiles, other.tiles)

    def __hash__(self):
        return hash((self.n, self.tiles.tobytes()))

    def __repr__(self):
        return f"PipeDream(n={self.n}, crosses={self.crosses()})"

    def to_text(self) -> str:
        """``n=<order>`` then one line per row, '+' for cross and '.' for elbow."""
        lines = [f"n={self.n}"]
        for i in range(1, self.n):
            start = box_index(self.n, i, 1)
            lines.append("".join("+" if t else "." for t in self.tiles[start:start + self.n - i]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PipeDream":
        lines = [ln.strip() for ln in text.strip().splitlines()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("missing 'n=<order>' header")
        n = int(lines[0][2:])
        rows = lines[1:]
        if n == 1 and not rows:
            return cls(1)
        if len(rows) != n - 1:
            raise ValueError(f"expected {n - 1} rows, got {len(rows)}")
        bits = []
        for i, r in enumerate(rows, start=1):
            if len(r) != n - i or set(r) - {"+", "."}:
                raise ValueError(f"bad row {i}: {r!r}")
            bits.extend(c == "+" for c in r)
        return cls(n, np.array(bits, dtype=bool))


@dataclass(frozen=True)
class ReductionTrace:
    """Visit order (columns left to right, each bottom to top) and the set of
    crosses that were demoted to bumps."""

    n: int
    demoted: frozenset

    def order(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(1, self.n) for i in range(self.n - j, 0, -1)]


_EMPTY = np.ones(1)
_NO_Q = {}


def _no_q(n: int) -> np.ndarray:
    nb = num_boxes(n)
    if nb not in _NO_Q:
        _NO_Q[nb] = np.ones(nb)
    return _NO_Q[nb]


# --- operations ------------------------------------------------------------

def _check_prob(p: float, name: str = "p"):
    if not 0 <= p <= 1:
        raise ValueError(f"{name}={p} outside [0,1]")


def sample(n: int, p: float, rng: np.random.Generator) -> PipeDream:
    """Each box is a cross independently with probability p."""
    _check_prob(p)
    return PipeDream(n, rng.random(num_boxes(n)) < p)


def sample_permutation(n: int, p: float, rng: np.random.Generator,
                       q: float = 0.0) -> Permutation:
    """Sample a dream and return its (q-)reduced permutation in one pass."""
    _check_prob(p)
    _check_prob(q, "q")
    nb = num_boxes(n)
    u = rng.random(nb)
    qu = rng.random(nb) if 0 < q < 1 else _EMPTY
    return Permutation(_row_sweep_uniform(n, u, float(p), qu, float(q)))


def reduce(d: PipeDream) -> tuple[PipeDream, ReductionTrace]:
    """Demote every repeated crossing of a pipe pair to a bump."""
    demoted, _ = _reduce_pairs(d.n, d.tiles)
    bx = boxes(d.n)
    trace = ReductionTrace(d.n, frozenset(bx[k] for k in np.flatnonzero(demoted)))
    return PipeDream(d.n, d.tiles & ~demoted), trace


def word_of(d: PipeDream) -> tuple[int, ...]:
    """Letters i+j-1 of the crosses, read diagonal by diagonal (j-i
    increasing), bottom box first within a diagonal.  Letters on one
    diagonal commute, so the tie order does not affect any product."""
    cr = sorted(d.crosses(), key=lambda b: (b[1] - b[0], -b[0]))
    return tuple(i + j - 1 for i, j in cr)


def permutation_of(d: PipeDream, route: str = "trace") -> Permutation:
    """Permutation of the reduced dream.

    ``route="trace"`` follows the pipes with the reduction rule row by row
    (``"column"`` does the same in the column order of the reduction and
    ``"pairs"`` uses the explicit crossed-pair table);
    ``route="demazure"`` inverts the 0-Hecke product of ``word_of(d)``.
    """
    if route == "trace":
        return Permutation(_row_sweep(d.n, d.tiles, _EMPTY, 0.0))
    if route == "column":
        return Permutation(_column_sweep(d.n, d.tiles, _no_q(d.n), 0.0))
    if route == "pairs":
        return Permutation(_reduce_pairs(d.n, d.tiles)[1])
    if route == "demazure":
        return demazure_product(word_of(d), d.n).inverse()
    raise ValueError(f"unknown route {route!r}")


def q_reduce(d: PipeDream, q: float, rng: np.random.Generator | None = None) -> Permutation:
    """Randomized resolution swept along diagonals: two pipes that already
    crossed cross again with probability q.  One uniform per box is drawn
    (none when q=0), so the result does not depend on the visit order."""
    _check_prob(q, "q")
    if q == 0:
        qu = _no_q(d.n)
    elif q == 1:
        qu = np.zeros(num_boxes(d.n))
    else:
        if rng is None:
            raise ValueError("rng required for 0 < q < 1")
        qu = rng.random(num_boxes(d.n))
    return Permutation(_diagonal_sweep(d.n, d.tiles, qu, float(q)))


def crossing_counts(d: PipeDream) -> np.ndarray:
    """``C[a,b]`` (a<b): how often pipes a and b cross when no cross is demoted."""
    return _crossing_counts(d.n, d.tiles)


def enumerate_dreams(n: int, cap: int = ENUM_CAP) -> Iterator[PipeDream]:
    """All 2^C(n,2) tilings, by bitmask over the storage order."""
    if n > cap:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}")
    nb = num_boxes(n)
    for mask in range(1 << nb):
        yield PipeDream(n, ((mask >> np.arange(nb)) & 1).astype(bool))


@lru_cache(maxsize=None)
def cross_count_table(n: int, cap: int = ENUM_CAP) -> dict[Permutation, tuple[int, ...]]:
    """For each permutation, the number of dreams mapping to it with c crosses
    (c = 0..C(n,2))."""
    if n > cap:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}")
    nb = num_boxes(n)
    if n == 1:
        return {Permutation.identity(1): (1,)}
    perms, ncross = _enumerate_all(n)
    codes, inverse = np.unique(perms, axis=0, return_inverse=True)
    hist = np.zeros((codes.shape[0], nb + 1), dtype=np.int64)
    np.add.at(hist, (inverse.ravel(), ncross.astype(np.int64)), 1)
    return {Permutation(c.astype(np.int64)): tuple(int(v) for v in h)
            for c, h in zip(codes, hist)}


def upsilon_bruteforce(w: Permutation, beta=1):
    """Sum over dreams reducing to w of beta^(#crosses - l(w)).

    Exact when ``beta`` is an int or Fraction."""
    counts = cross_count_table(w.n).get(w)
    if counts is None:
        raise ValueError(f"{w} is not a permutation of order {w.n}")
    ell = inversions(w)
    beta = Fraction(beta) if not isinstance(beta, float) else beta
    return sum(c * beta ** (k - ell) for k, c in enumerate(counts) if c)


def exact_distribution(n: int, p) -> dict[Permutation, object]:
    """Law of the reduced permutation of a Bernoulli(p) dream.

    Rational p (int, Fraction or str) gives exact Fractions."""
    if isinstance(p, str):
        p = Fraction(p)
    if not isinstance(p, float):
        p = Fraction(p)
    _check_prob(p)
    nb = num_boxes(n)
    out = {}
    for w, counts in cross_count_table(n).items():
        out[w] = sum(c * p ** k * (1 - p) ** (nb - k) for k, c in enumerate(counts) if c)
    return out
