"""Bumpless pipe dreams, equivalently alternating sign matrices.

Rows i = 1..n run top to bottom, columns j = 1..n left to right.  Pipe c
enters at the bottom of column c and every pipe leaves through the right
edge of some row.  Tiles and their ASM entries:

====  ======================================  =====
sym   tile                                    ASM
====  ======================================  =====
r     elbow bottom -> right                   +1
J     elbow left -> top                       -1
\\+   cross                                    0
\\-   horizontal                               0
|     vertical                                 0
.     empty                                    0
====  ======================================  =====

The permutation ``w(D)_r`` is the label leaving row r when pipes are traced
bottom to top and left to right, a second crossing of the same two pipes
being read as a bounce.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Iterator, Sequence

import numpy as np

from .perm_core import Permutation, demazure_product, inversions

ENUM_CAP = 5
LEGEND = {"r": "elbow bottom->right (+1)", "J": "elbow left->top (-1)",
          "+": "cross", "-": "horizontal", "|": "vertical", ".": "empty"}


class BumplessPipeDream:
    __slots__ = ("n", "tiles")

    def __init__(self, tiles: Sequence[str]):
        tiles = tuple(tiles)
        n = len(tiles)
        if any(len(r) != n for r in tiles):
            raise ValueError("tile grid must be square")
        self.n, self.tiles = n, tiles
        self._validate()

    # edge occupancies of a tile: (bottom, left, top, right)
    _PORTS = {"r": (1, 0, 0, 1), "J": (0, 1, 1, 0), "+": (1, 1, 1, 1),
              "-": (0, 1, 0, 1), "|": (1, 0, 1, 0), ".": (0, 0, 0, 0)}

    def _validate(self):
        n = self.n
        for i in range(n):
            for j in range(n):
                c = self.tiles[i][j]
                if c not in self._PORTS:
                    raise ValueError(f"unknown tile {c!r}")
                b, l, t, r = self._PORTS[c]
                below = 1 if i == n - 1 else self._PORTS[self.tiles[i + 1][j]][2]
                left = 0 if j == 0 else self._PORTS[self.tiles[i][j - 1]][3]
                if b != below or l != left:
                    raise ValueError(f"pipes do not connect at ({i + 1},{j + 1})")
                if i == 0 and t:
                    raise ValueError("a pipe leaves through the top")
                if j == n - 1 and not r:
                    raise ValueError(f"row {i + 1} has no exiting pipe")

    @classmethod
    def from_asm(cls, A) -> "BumplessPipeDream":
        A = np.asarray(A, dtype=int)
        n = A.shape[0]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if A[i, j] == 1:
                    row.append("r")
                elif A[i, j] == -1:
                    row.append("J")
                else:
                    below = 1 - A[i + 1:, j].sum()
                    left = A[i, :j].sum()
                    row.append({(1, 1): "+", (1, 0): "|", (0, 1): "-", (0, 0): "."}[below, left])
            rows.append("".join(row))
        return cls(rows)

    def asm(self) -> np.ndarray:
        m = {"r": 1, "J": -1}
        return np.array([[m.get(c, 0) for c in r] for r in self.tiles], dtype=int)

    def count(self, sym: str) -> int:
        return sum(r.count(sym) for r in self.tiles)

    def to_text(self) -> str:
        return "\n".join(self.tiles) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BumplessPipeDream":
        return cls([ln.strip() for ln in text.strip().splitlines()])

    def __eq__(self, other):
        return isinstance(other, BumplessPipeDream) and self.tiles == other.tiles

    def __hash__(self):
        return hash(self.tiles)

    def __repr__(self):
        return "BumplessPipeDream(" + "/".join(self.tiles) + ")"


def _trace(d: BumplessPipeDream):
    """Label flow with a table of crossed pairs.  Returns the exit labels by
    row, the set of pairs crossing more than once, and the frontier word."""
    n = d.n
    below = list(range(1, n + 1))          # label on the bottom edge of each column (0 = none)
    crossed, repeated = set(), set()
    word = []
    exit_by_row = [0] * n
    for i in range(n - 1, -1, -1):
        left = 0
        # occupied slots strictly before column j on the cut: tops of processed cells
        for j in range(n):
            c = d.tiles[i][j]
            v = below[j]
            if c == "+":
                pos = sum(1 for jj in range(j) if below[jj]) + 1
                word.append(pos)
                pair = (min(left, v), max(left, v))
                if pair in crossed:
                    repeated.add(pair)
                    below[j], left = left, v      # bounce
                else:
                    crossed.add(pair)             # straight through
            elif c == "r":
                below[j], left = 0, v
            elif c == "J":
                below[j], left = left, 0
            # '-', '|' and '.' keep both labels in place
        exit_by_row[i] = left
    return exit_by_row, repeated, word


def bpd_permutation(d: BumplessPipeDream, route: str = "pairs") -> Permutation:
    """w(D): ``route="pairs"`` uses the crossed-pair table; ``"demazure"``
    reads each cross as the generator swapping its two slots on the current
    cut and takes the 0-Hecke product."""
    exits, _, word = _trace(d)
    if route == "pairs":
        return Permutation(exits)
    if route == "demazure":
        return demazure_product(word, d.n).inverse() if d.n > 1 else Permutation([1])
    raise ValueError(f"unknown route {route!r}")


def repeated_crossings(d: BumplessPipeDream) -> set[tuple[int, int]]:
    return _trace(d)[1]


def _dfs(n: int, target: Sequence[int] | None, accept: Callable | None) -> Iterator[BumplessPipeDream]:
    """Bottom-up row transfer.  Within a row the partial ASM sum is the
    left-edge occupancy; the column state is the bottom-edge occupancy.
    With ``target`` a row is abandoned as soon as its exit label differs."""
    grid = [[""] * n for _ in range(n)]

    def cell(i, j, below, left, crossed):
        if j == n:
            if not left:
                return
            if target is not None and left != target[i]:
                return
            if i == 0:
                if any(below):
                    return
                d = BumplessPipeDream(["".join(r) for r in grid])
                if accept is None or accept(d):
                    yield d
                return
            yield from cell(i - 1, 0, below, 0, crossed)
            return
        v = below[j]
        opts = []
        if v and left:
            pair = (min(left, v), max(left, v))
            if pair in crossed:
                opts.append(("+", left, v, crossed))
            else:
                opts.append(("+", v, left, crossed | {pair}))
        elif v:
            opts += [("|", v, 0, crossed), ("r", 0, v, crossed)]
        elif left:
            opts += [("-", 0, left, crossed), ("J", left, 0, crossed)]
        else:
            opts.append((".", 0, 0, crossed))
        for sym, up, right, cr in opts:
            grid[i][j] = sym
            nb = below[:j] + (up,) + below[j + 1:]
            yield from cell(i, j + 1, nb, right, cr)

    yield from cell(n - 1, 0, tuple(range(1, n + 1)), 0, frozenset())


def enumerate_bpd(n: int, cap: int = ENUM_CAP) -> Iterator[BumplessPipeDream]:
    """Every bumpless pipe dream of size n (one per ASM)."""
    if n > cap:
        raise ValueError(f"n={n} exceeds enumeration cap {cap}")
    yield from _dfs(n, None, None)


def bpds_of(w: Permutation, accept: Callable | None = None) -> Iterator[BumplessPipeDream]:
    """Bumpless pipe dreams with w(D) = w, pruned row by row on exit labels."""
    yield from _dfs(w.n, list(w), accept)


def upsilon_via_bpd(w: Permutation, beta=1):
    """sum over BPD(w) of beta^(#empty - l(w)) (1+beta)^(#J)."""
    beta = Fraction(beta) if not isinstance(beta, float) else beta
    ell = inversions(w)
    return sum(beta ** (d.count(".") - ell) * (1 + beta) ** d.count("J") for d in bpds_of(w))


def two_asm_law(n: int) -> dict[Permutation, Fraction]:
    """Law of w(D) when D is weighted by 2^(#J) / 2^C(n,2)."""
    law: dict[Permutation, Fraction] = {}
    scale = Fraction(1, 2 ** comb(n, 2))
    for d in enumerate_bpd(n):
        w = bpd_permutation(d)
        law[w] = law.get(w, 0) + scale * 2 ** d.count("J")
    return law


def clt_experiment(n: int, samples: int, seed: int = 0, threads: int | None = None):
    """KS distance of (w_n - n/2) / sqrt(n/4) from N(0,1) under the p = 1/2
    Grothendieck permutation.  Returns (statistic, pvalue, standardized values)."""
    from scipy import stats

    from .pipedream import sample_permutation
    from .streams import indexed_map, stream

    vals = indexed_map(lambda s: sample_permutation(n, 0.5, stream(seed, s))[n],
                       range(samples), threads)
    z = (np.array(vals, dtype=float) - n / 2) / np.sqrt(n / 4)
    res = stats.kstest(z, "norm")
    return float(res.statistic), float(res.pvalue), z
