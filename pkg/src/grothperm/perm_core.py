"""Permutations in one-line notation and the statistics used throughout.

All public indices are 1-based: ``w[i]`` for ``i`` in ``1..n`` is the image
of ``i``.  Internally the images live in a read-only numpy array.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numba import njit


@njit(cache=True)
def _count_inversions(a):
    # Fenwick tree over values 1..n, scanning right to left
    n = a.shape[0]
    tree = np.zeros(n + 1, dtype=np.int64)
    total = 0
    for idx in range(n - 1, -1, -1):
        v = a[idx] - 1
        while v > 0:
            total += tree[v]
            v -= v & -v
        v = a[idx]
        while v <= n:
            tree[v] += 1
            v += v & -v
    return total


class Permutation:
    """Immutable permutation of {1..n} in one-line notation."""

    __slots__ = ("_a",)

    def __init__(self, images: Iterable[int]):
        a = np.array(list(images) if not isinstance(images, np.ndarray) else images,
                     dtype=np.int64)
        if a.ndim != 1:
            raise ValueError("images must be one-dimensional")
        n = a.shape[0]
        seen = np.zeros(n + 1, dtype=bool)
        if n and (a.min() < 1 or a.max() > n):
            raise ValueError("images must lie in 1..n")
        seen[a] = True
        if not seen[1:].all():
            raise ValueError("images are not a bijection")
        a.flags.writeable = False
        self._a = a

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Parse ``"241653"`` (n <= 9) or whitespace/comma separated images."""
        text = text.strip()
        if any(c in text for c in " ,\t"):
            return cls(int(t) for t in text.replace(",", " ").split())
        return cls(int(c) for c in text)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(np.arange(1, n + 1))

    @classmethod
    def longest(cls, n: int) -> "Permutation":
        """The full reversal w0(n)."""
        return cls(np.arange(n, 0, -1))

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def images(self) -> np.ndarray:
        return self._a

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return int(self._a[i - 1])

    def __len__(self):
        return self.n

    def __iter__(self):
        return iter(self._a.tolist())

    def __eq__(self, other):
        return isinstance(other, Permutation) and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __lt__(self, other):
        return self._a.tolist() < other._a.tolist()

    def __repr__(self):
        return f"Permutation({self})"

    def __str__(self):
        if self.n <= 9:
            return "".join(map(str, self._a.tolist()))
        return " ".join(map(str, self._a.tolist()))

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self._a)
        inv[self._a - 1] = np.arange(1, self.n + 1)
        return Permutation(inv)

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``(self * other)(i) = self(other(i))``."""
        return Permutation(self._a[other._a - 1])


def inversions(w: Permutation) -> int:
    """Number of pairs i<j with w_i > w_j (the Coxeter length)."""
    return int(_count_inversions(w.images))


def displacement(w: Permutation) -> int:
    """Total displacement sum |i - w_i|."""
    return int(np.abs(w.images - np.arange(1, w.n + 1)).sum())


def height(w: Permutation, x: int, y: int) -> int:
    """H(x,y): number of positions j >= y whose value w_j is at least x.

    Equivalently the size of {w^-1(x),...,w^-1(n)} intersected with {y,...,n}.
    """
    n = w.n
    if not (1 <= x <= n and 1 <= y <= n):
        raise ValueError(f"(x, y) = ({x}, {y}) outside 1..{n}")
    return int((w.images[y - 1:] >= x).sum())


def height_table(w: Permutation) -> np.ndarray:
    """All heights at once: ``T[x, y] = H(x, y)`` for 1 <= x,y <= n+1.

    Row and column ``n+1`` are zero and index 0 is unused.  Built from the
    permutation matrix by a reverse 2D cumulative sum, O(n^2) memory.
    """
    n = w.n
    m = np.zeros((n + 2, n + 2), dtype=np.int32)
    m[w.images, np.arange(1, n + 1)] = 1
    return m[::-1, ::-1].cumsum(0).cumsum(1)[::-1, ::-1]


def demazure_product(word: Sequence[int], n: int) -> Permutation:
    """0-Hecke product s_{r1} s_{r2} ... folded from the left.

    Products compose left to right, so appending s_r exchanges the values
    r and r+1; it is applied only when that increases the length.  The fold
    runs on the inverse, where the move is a swap of adjacent positions.
    """
    inv = np.arange(1, n + 1, dtype=np.int64)
    for r in word:
        if not 1 <= r <= n - 1:
            raise ValueError(f"letter {r} outside 1..{n - 1}")
        if inv[r - 1] < inv[r]:
            inv[r - 1], inv[r] = inv[r], inv[r - 1]
    return Permutation(inv).inverse()


def cross_product(u: Permutation, w: Permutation) -> Permutation:
    """Block sum ``u x w = (u_1, ..., u_k, w_1 + k, ..., w_m + k)``."""
    return Permutation(np.concatenate([u.images, w.images + u.n]))


def check_composition(b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(int(v) for v in b)
    if not b or any(v < 1 for v in b):
        raise ValueError(f"composition parts must be positive: {b}")
    return b


def layered(b: Sequence[int]) -> Permutation:
    """Layered permutation ``w0(b_l) x ... x w0(b_1)``.

    ``b`` is given in display order ``(b_l, ..., b_1)``, so its first entry
    is the top-left block.
    """
    b = check_composition(b)
    blocks, offset = [], 0
    for size in b:
        blocks.append(np.arange(offset + size, offset, -1))
        offset += size
    return Permutation(np.concatenate(blocks))


def w0_block(k: int, n: int) -> Permutation:
    """``id_k x w0(n)``: identity on the first k letters, reversal on the rest."""
    return cross_product(Permutation.identity(k), Permutation.longest(n))
