"""Exact principal specializations of Grothendieck polynomials.

For w0(k;n) = id_k x w0(n) the specialization at all x_i = 1 is a Hankel
determinant of Narayana polynomials L_m(1+beta):

    Y(k, n; beta) = (1+beta)^{-C(k,2)} det[ L_{n+i+j-2}(1+beta) ]_{i,j=1..k}

Layered permutations factor over their blocks, which turns the search for
the largest specialization among layered permutations into a dynamic
program over the last block.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .perm_core import check_composition

EXACT_CAP = 200


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    """N(n,k) = C(n,k) C(n,k-1) / n: Dyck paths of size n with k-1 valleys."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return comb(n, k) * comb(n, k - 1) // n


def narayana_poly(n: int, x) -> Fraction:
    """L_n(x) = sum_k N(n,k) x^{k-1}, with L_0 = 1."""
    x = _q(x)
    if n == 0:
        return Fraction(1)
    return sum((narayana(n, k) * x ** (k - 1) for k in range(1, n + 1)), Fraction(0))


def little_schroeder(n: int) -> int:
    return int(narayana_poly(n, 2))


def large_schroeder(n: int) -> int:
    """S_n, counting lattice paths; S_0 = 1 and S_n = 2 s_n for n >= 1."""
    return 1 if n == 0 else 2 * little_schroeder(n)


def det_exact(rows) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[_q(v) for v in r] for r in rows]
    k = len(a)
    det = Fraction(1)
    for c in range(k):
        piv = next((r for r in range(c, k) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, k):
            f = a[r][c] / a[c][c]
            if f:
                for cc in range(c, k):
                    a[r][cc] -= f * a[c][cc]
    return det


def hankel_direct(beta, n: int, k: int) -> Fraction:
    x = 1 + _q(beta)
    return det_exact([[narayana_poly(n + i + j, x) for j in range(k)] for i in range(k)])


class HankelTable:
    """D(n,k) = det[L_{n+i+j-2}(1+beta)]_{k x k} by Dodgson condensation:

        D(n,k) D(n+2,k-2) = D(n+2,k-1) D(n,k-1) - D(n+1,k-1)^2

    Columns k are built in turn and only the previous two stay resident.
    A zero pivot triggers direct elimination for that entry."""

    def __init__(self, beta, nmax: int, kmax: int):
        self.beta = _q(beta)
        x = 1 + self.beta
        width = nmax + 2 * kmax + 1
        prev2 = [Fraction(1)] * width
        prev = [narayana_poly(m, x) for m in range(width)]
        self.entries: dict[tuple[int, int], Fraction] = {}
        for m in range(nmax + 1):
            self.entries[m, 0] = prev2[m]
            self.entries[m, 1] = prev[m]
        for k in range(2, kmax + 1):
            cur = []
            for m in range(len(prev) - 2):
                piv = prev2[m + 2]
                if piv == 0:
                    cur.append(hankel_direct(self.beta, m, k))
                else:
                    cur.append((prev[m + 2] * prev[m] - prev[m + 1] ** 2) / piv)
            for m in range(nmax + 1):
                self.entries[m, k] = cur[m]
            prev2, prev = prev, cur

    def __getitem__(self, nk):
        return self.entries[nk]


def hankel_det(beta, n: int, k: int) -> Fraction:
    if n < 0 or k < 0:
        raise ValueError("need n, k >= 0")
    if k <= 1:
        return Fraction(1) if k == 0 else narayana_poly(n, 1 + _q(beta))
    return HankelTable(beta, n, k)[n, k]


def proctor(k: int, n: int) -> Fraction:
    """prod_{1<=i<j<=n} (2k+i+j-1)/(i+j-1): principal Schubert value of w0(k;n)."""
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out *= Fraction(2 * k + i + j - 1, i + j - 1)
    return out


def upsilon_w0(k: int, n: int, beta=1, route: str = "narayana") -> Fraction:
    """Specialization of the Grothendieck polynomial of id_k x w0(n).

    ``route="narayana"`` uses the general-beta Hankel formula; ``"schroeder"``
    (beta = 1 only) uses 2^{-C(k,2)} det[s_{n-2+i+j}]; ``"large"`` uses
    2^{-C(k+1,2)} det[S_{n-2+i+j}]; ``"proctor"`` (beta = 0 only) the product."""
    beta = _q(beta)
    if route == "narayana":
        return hankel_det(beta, n, k) / (1 + beta) ** comb(k, 2)
    if route == "schroeder":
        if beta != 1:
            raise ValueError("Schroeder route needs beta = 1")
        return det_exact([[little_schroeder(n + i + j) for j in range(k)]
                          for i in range(k)]) / 2 ** comb(k, 2)
    if route == "large":
        if beta != 1:
            raise ValueError("Schroeder route needs beta = 1")
        return det_exact([[large_schroeder(n + i + j) for j in range(k)]
                          for i in range(k)]) / 2 ** comb(k + 1, 2)
    if route == "proctor":
        if beta != 0:
            raise ValueError("Proctor route needs beta = 0")
        return proctor(k, n)
    raise ValueError(f"unknown route {route!r}")


def upsilon_layered(b: Sequence[int], beta=1) -> Fraction:
    """Specialization for the layered permutation of b = (b_l, ..., b_1).

    Factorizes as prod_i Y(k_i, b_i) with k_i = n - b_1 - ... - b_i, the
    number of letters before block i."""
    b = check_composition(b)
    out = Fraction(1)
    before = sum(b)
    for size in reversed(b):
        before -= size
        out *= upsilon_w0(before, size, beta)
    return out


def log2_exact(x) -> float:
    """log2 of a positive int or Fraction, accurate to about 2^-52.

    Uses the bit length and the top 64 bits, so huge values never overflow."""
    if isinstance(x, Fraction):
        if x <= 0:
            raise ValueError("log2 of a nonpositive number")
        return log2_exact(x.numerator) - log2_exact(x.denominator)
    x = int(x)
    if x <= 0:
        raise ValueError("log2 of a nonpositive number")
    shift = max(x.bit_length() - 64, 0)
    return shift + math.log2(x >> shift)


# --- layered optimizer ------------------------------------------------------

@dataclass(frozen=True)
class LayeredOptimum:
    n: int
    b: tuple[int, ...]
    f: float
    upsilon: int
    margin: float

    def row(self) -> str:
        return f"{self.n},{'-'.join(map(str, self.b))},{round_f(self.f)}"


def round_f(f: float, digits: int = 5) -> str:
    """Round half to even at the given decimal digit."""
    from decimal import ROUND_HALF_EVEN, Decimal
    return str(Decimal(repr(f)).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


class LayeredOptimizer:
    """best(n) = max over the last block b1 of best(n-b1) + log2 F(n-b1, b1),
    with F(k, m) = Y(k, m; 1) read from one condensation table at beta = 1.

    At beta = 1 the condensation runs in integers: D(m,k) = 2^{C(k,2)} F(k,m)
    and every division is exact.  The DP compares float logarithms; any
    candidates closer than ``TIE_TOL`` are re-ranked with exact integers,
    and exact ties go to the lexicographically smallest composition.
    """

    TIE_TOL = 1e-7

    def __init__(self, nmax: int, cap: int = EXACT_CAP):
        if nmax > cap:
            raise ValueError(f"n={nmax} exceeds the exact cap {cap}")
        self.nmax = nmax
        self._F: dict[tuple[int, int], int] = {}
        self._logF: dict[tuple[int, int], float] = {}
        width = 2 * nmax + 2
        prev2 = [1] * width
        prev = [int(narayana_poly(m, 2)) for m in range(width)]
        self._store(0, prev2)
        self._store(1, prev)
        for k in range(2, nmax):
            cur = []
            for m in range(len(prev) - 2):
                q, r = divmod(prev[m + 2] * prev[m] - prev[m + 1] ** 2, prev2[m + 2])
                if r:
                    raise ArithmeticError("condensation lost integrality")
                cur.append(q)
            self._store(k, cur)
            prev2, prev = prev, cur

    def _store(self, k: int, col):
        scale = 2 ** comb(k, 2)
        for m in range(1, self.nmax - k + 1):
            val, r = divmod(col[m], scale)
            if r:
                raise ArithmeticError("specialization at beta = 1 must be an integer")
            self._F[k, m] = val
            self._logF[k, m] = log2_exact(val)

    def F(self, k: int, m: int) -> int:
        return self._F[k, m]

    def log2F(self, k: int, m: int) -> float:
        return self._logF[k, m]

    def solve(self, n: int) -> LayeredOptimum:
        if not 1 <= n <= self.nmax:
            raise ValueError("n outside the table")
        best = [0.0] * (n + 1)
        exact = [1] * (n + 1)
        choice: list[tuple[int, ...]] = [()] * (n + 1)
        margin = math.inf
        for t in range(1, n + 1):
            cands = [(best[t - b1] + self._logF[t - b1, b1], b1) for b1 in range(1, t + 1)]
            top = max(c[0] for c in cands)
            near = [b1 for v, b1 in cands if v >= top - self.TIE_TOL]
            scored = [(exact[t - b1] * self._F[t - b1, b1], choice[t - b1] + (b1,))
                      for b1 in near]
            hi = max(s[0] for s in scored)
            comp = min(s[1] for s in scored if s[0] == hi)
            b1 = comp[-1]
            best[t] = best[t - b1] + self._logF[t - b1, b1]
            exact[t] = hi
            choice[t] = comp
            if t == n:
                rest = [v for v, c in cands if c != b1]
                margin = best[t] - max(rest) if rest else math.inf
        b = choice[n]
        f = log2_exact(exact[n]) / n ** 2
        if abs(f * n * n - best[n]) > 1e-6:
            raise ArithmeticError("DP objective disagrees with exact recomputation")
        return LayeredOptimum(n, b, f, exact[n], margin)


@lru_cache(maxsize=4)
def _optimizer(nmax: int) -> LayeredOptimizer:
    return LayeredOptimizer(nmax)


def optimize_layered(n: int, beta=1, cap: int = EXACT_CAP) -> LayeredOptimum:
    """Best layered permutation of order n for the beta = 1 specialization."""
    if _q(beta) != 1:
        raise NotImplementedError("the optimizer is exact only at beta = 1")
    if n > cap:
        raise ValueError(f"n={n} exceeds the exact cap {cap}")
    return _optimizer(max(n, 2)).solve(n)


def layered_table(ns: Sequence[int], cap: int = EXACT_CAP) -> list[LayeredOptimum]:
    opt = LayeredOptimizer(max(ns), cap)
    return [opt.solve(n) for n in ns]


def beta_bounds(beta: float) -> tuple[float, float]:
    """Lower and upper bounds on lim log2 u_n(beta) / n^2."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    l2 = math.log2
    if beta <= 1:
        lo = 0.25 * max(l2(2 + beta), 2 * l2(1 + beta))
        hi = 0.5 * min(l2(2 + beta), l2(1 + 1 / beta))
    else:
        lo = 0.25 * max(l2(2 + beta), 2 * l2(1 + 1 / beta))
        hi = 0.5 * l2(1 + beta)
    return lo, hi


def asm_count(n: int) -> int:
    """Number of n x n alternating sign matrices: prod (3k+1)! / (n+k)!."""
    if n < 1:
        raise ValueError("need n >= 1")
    num = den = 1
    for k in range(n):
        num *= math.factorial(3 * k + 1)
        den *= math.factorial(n + k)
    return num // den
