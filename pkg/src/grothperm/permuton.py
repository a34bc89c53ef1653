"""Limit shape of Grothendieck random permutations and empirical comparison.

Points of a permutation are (X, Y) = (w_j / n, j / n): value against
position.  The height H(x,y) / n tends to h(x,y) = P(X >= x, Y >= y), given
piecewise on four zones of the unit square:

* A (x < 1-p, y > x/(1-p)):  h = 1 - y
* B (y < (1-p) x):           h = 1 - x
* D (outside the ellipse (y-x)^2/p + (y+x-1)^2/(1-p) = 1, with x+y > 1):  h = 0
* C (the rest):              h = 1 + (2/p) sqrt((1-p) x y) - (x+y)/p
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from .perm_core import Permutation
from .tasep import inverse_v_sum
from .tracy_widom import TWQuadrature, tw2_cdf, tw2_moments  # noqa: F401  (re-exported)

ZONES = ("A", "B", "C", "D", "boundary")
_TOL = 1e-12


def _check_p(p):
    if not 0 < p < 1:
        raise ValueError(f"p={p} outside (0,1)")


def ellipse_lhs(x, y, p):
    return (y - x) ** 2 / p + (y + x - 1) ** 2 / (1 - p)


def zone(x: float, y: float, p: float) -> str:
    """Zone label of (x, y); points within 1e-12 of a dividing curve give 'boundary'."""
    _check_p(p)
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise ValueError("point outside the unit square")
    a_line = y - x / (1 - p)
    b_line = (1 - p) * x - y
    ell = ellipse_lhs(x, y, p) - 1
    if x < 1 - p - _TOL and a_line > _TOL:
        return "A"
    if b_line > _TOL:
        return "B"
    if x + y > 1 and ell > _TOL:
        return "D"
    if abs(a_line) <= _TOL or abs(b_line) <= _TOL or (x + y > 1 and abs(ell) <= _TOL):
        return "boundary"
    return "C"


def _h_curved(x, y, p):
    return 1 + (2 / p) * np.sqrt((1 - p) * x * y) - (x + y) / p


def limit_height(x, y, p):
    """Limit height h(x,y); vectorized.  Boundaries use the zone-C formula,
    which is continuous with every neighbour."""
    _check_p(p)
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    h = _h_curved(x, y, p)
    in_a = (x < 1 - p) & (y > x / (1 - p))
    in_b = y < (1 - p) * x
    in_d = (x + y > 1) & (ellipse_lhs(x, y, p) > 1) & ~in_a & ~in_b
    h = np.where(in_a, 1 - y, h)
    h = np.where(in_b, 1 - x, h)
    h = np.where(in_d, 0.0, h)
    return float(h) if h.ndim == 0 else h


def ellipse_x(y: float, p: float) -> float:
    """x-coordinate of the upper-right arc of the ellipse at height y > 1-p."""
    _check_p(p)
    if not 1 - p < y <= 1:
        raise ValueError(f"y={y} must lie in (1-p, 1]")
    return (math.sqrt(p * (1 - y)) + math.sqrt(y * (1 - p))) ** 2


def atom_mass(y: float, p: float) -> float:
    """Mass of the point X = ellipse_x(y) in the law of X given Y = y."""
    _check_p(p)
    if not 1 - p < y <= 1:
        raise ValueError(f"y={y} must lie in (1-p, 1]")
    s = math.sqrt(p * (1 - y)) + math.sqrt(y * (1 - p))
    return 1 / p - math.sqrt(1 - p) * s / (p * math.sqrt(y))


def gamma_p(p: float) -> float:
    """Total singular mass on the ellipse: 1 - sqrt((1-p)/p) arccos sqrt(1-p)."""
    _check_p(p)
    return 1 - math.sqrt((1 - p) / p) * math.acos(math.sqrt(1 - p))


def conditional_cdf(x, y, p):
    """P(X <= x | Y = y); equals 1 + dh/dy."""
    _check_p(p)
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    with np.errstate(divide="ignore", invalid="ignore"):
        c = (p - 1) / p + np.sqrt((1 - p) * x * y) / (p * y)
    in_a = (x < 1 - p) & (y > x / (1 - p))
    in_b = y < (1 - p) * x
    in_d = (x + y > 1) & (ellipse_lhs(x, y, p) > 1) & ~in_a & ~in_b
    c = np.where(in_a, 0.0, c)
    c = np.where(in_b | in_d, 1.0, c)
    return float(c) if c.ndim == 0 else c


def copula(x, y, p):
    """Joint distribution function P(X <= x, Y <= y)."""
    _check_p(p)
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    c = (p - 1) / p * (x + y) + (2 / p) * np.sqrt((1 - p) * x * y)
    in_a = (x < 1 - p) & (y > x / (1 - p))
    in_b = y < (1 - p) * x
    in_d = (x + y > 1) & (ellipse_lhs(x, y, p) > 1) & ~in_a & ~in_b
    c = np.where(in_a, x, c)
    c = np.where(in_b, y, c)
    c = np.where(in_d, x + y - 1, c)
    return float(c) if c.ndim == 0 else c


def fluct_constant(x: float, y: float, p: float) -> float:
    """Fluctuation scale v(x,y) of the height at a point of zone C.

    Equals 1/v1 + 1/v2 of the TASEP at m = 1 - x - h(x,y), t = y."""
    if zone(x, y, p) != "C":
        raise ValueError(f"({x}, {y}) is not inside zone C")
    m = 1 - x - limit_height(x, y, p)
    return inverse_v_sum(m, y, p)


# --- empirical side --------------------------------------------------------

class EmpiricalGrid:
    """g x g histogram of permutation points, merged additively.

    A point with value v and position j of an order-n permutation lands in
    cell (floor((v-1) g / n), floor((j-1) g / n)).  The suffix sum from cell
    (k, l) then counts values >= ceil(nk/g)+1 at positions >= ceil(nl/g)+1,
    which is exactly a height H at those corners.
    """

    def __init__(self, n: int, g: int = 100):
        if g > n:
            raise ValueError("grid finer than the permutation")
        self.n, self.g = n, g
        self.counts = np.zeros((g, g), dtype=np.int64)
        self.samples = 0

    def add(self, w: Permutation) -> "EmpiricalGrid":
        if w.n != self.n:
            raise ValueError(f"order {w.n} does not match grid order {self.n}")
        v = (w.images - 1) * self.g // self.n
        j = np.arange(self.n) * self.g // self.n
        np.add.at(self.counts, (v, j), 1)
        self.samples += 1
        return self

    def merge(self, other: "EmpiricalGrid") -> "EmpiricalGrid":
        if (other.n, other.g) != (self.n, self.g):
            raise ValueError("mixing grids of different shape or order")
        out = EmpiricalGrid(self.n, self.g)
        out.counts = self.counts + other.counts
        out.samples = self.samples + other.samples
        return out

    def __eq__(self, other):
        return isinstance(other, EmpiricalGrid) and (self.n, self.g, self.samples) == \
            (other.n, other.g, other.samples) and np.array_equal(self.counts, other.counts)

    def mean_height(self) -> np.ndarray:
        """Average H/n at the lower-left corner of every cell."""
        suffix = self.counts[::-1, ::-1].cumsum(0).cumsum(1)[::-1, ::-1]
        return suffix / (self.samples * self.n)

    def corners(self) -> np.ndarray:
        return np.arange(self.g) / self.g


def empirical_height(perms: Iterable[Permutation], n: int, g: int = 100) -> EmpiricalGrid:
    grid = EmpiricalGrid(n, g)
    for w in perms:
        grid.add(w)
    return grid


def compare_height(grid: EmpiricalGrid, p: float) -> tuple[float, float]:
    """(max, mean) absolute deviation of the averaged H/n from the limit."""
    c = grid.corners()
    X, Y = np.meshgrid(c, c, indexing="ij")
    dev = np.abs(grid.mean_height() - limit_height(X, Y, p))
    return float(dev.max()), float(dev.mean())


def ellipse_points(p: float, m: int = 20001) -> np.ndarray:
    """Dense sample of the arc of the ellipse that bounds zone D."""
    y = np.linspace(1 - p, 1, m)
    x = (np.sqrt(p * (1 - y)) + np.sqrt(y * (1 - p))) ** 2
    return np.column_stack([x, y])


def near_ellipse_fraction(w: Permutation, p: float, radius: float = 3.0) -> float:
    """Fraction of points (w_j/n, j/n) within radius/n of the D-boundary arc."""
    from scipy.spatial import cKDTree
    n = w.n
    pts = np.column_stack([w.images / n, np.arange(1, n + 1) / n])
    d, _ = cKDTree(ellipse_points(p)).query(pts)
    return float(np.mean(d <= radius / n))


def limit_surface(p: float, g: int = 50) -> np.ndarray:
    """Rows (x, y, h) on a (g+1) x (g+1) grid of the closed square."""
    c = np.linspace(0, 1, g + 1)
    X, Y = np.meshgrid(c, c, indexing="ij")
    return np.column_stack([X.ravel(), Y.ravel(), limit_height(X, Y, p).ravel()])
