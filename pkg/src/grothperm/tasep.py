"""Discrete-time parallel TASEP with geometric jumps.

Particles sit at strictly decreasing positions xi_1 > xi_2 > ... > xi_k and
update simultaneously: xi_i <- xi_i + min(G_i, xi_{i-1} - xi_i - 1) with
xi_0 = +infinity and P(G = m) = (1-p) p^m.  Every particle consumes exactly
one draw per step, blocked or not, so a trajectory is a fixed function of
its uniform stream.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .streams import geometric


@dataclass(frozen=True)
class TasepState:
    positions: tuple[int, ...]
    t: int = 0

    def __post_init__(self):
        pos = self.positions
        if any(a <= b for a, b in zip(pos, pos[1:])):
            raise ValueError(f"positions must be strictly decreasing: {pos}")

    @classmethod
    def step_initial(cls, k: int) -> "TasepState":
        """xi_i(0) = k + 1 - i."""
        return cls(tuple(range(k, 0, -1)))


@dataclass(frozen=True)
class ExitRecord:
    exit_times: tuple[int, ...]
    trajectory: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        T = self.exit_times
        if any(a >= b for a, b in zip(T, T[1:])) or (T and T[0] < 1):
            raise AssertionError(f"exit times not strictly increasing: {T}")


def _apply_jumps(pos: np.ndarray, g: np.ndarray, frozen=None) -> np.ndarray:
    """Parallel update along the last axis; old positions decide the gaps."""
    new = pos.copy()
    new[..., 0] += g[..., 0] if frozen is None else np.where(frozen[..., 0], 0, g[..., 0])
    gap = pos[..., :-1] - pos[..., 1:] - 1
    move = np.minimum(g[..., 1:], gap)
    if frozen is not None:
        move = np.where(frozen[..., 1:], 0, move)
    new[..., 1:] += move
    return new


def step(s: TasepState, p: float, rng: np.random.Generator | None = None,
         jumps: Sequence[int] | None = None) -> TasepState:
    """One parallel update.  ``jumps`` overrides the geometric draws."""
    pos = np.array(s.positions, dtype=np.int64)
    g = np.asarray(jumps, dtype=np.int64) if jumps is not None else \
        geometric(rng.random(len(pos)), p)
    new = _apply_jumps(pos, g)
    if np.any(np.diff(new) >= 0):
        raise AssertionError("exclusion violated")
    return TasepState(tuple(int(v) for v in new), s.t + 1)


def run_with_exit_boundary(k: int, n: int, p: float,
                           rng: np.random.Generator | None = None,
                           jumps: Sequence[Sequence[int]] | None = None) -> ExitRecord:
    """Run from step initial data until every particle has met the wall.

    The wall sits at n+1-t at time t; T(i) = min{t : xi_i(t) >= n+1-t}.
    An exited particle is frozen.  This changes no exit time, because a
    follower exits before it can reach its frozen leader.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    pos = np.arange(k, 0, -1, dtype=np.int64)
    exit_t = np.zeros(k, dtype=np.int64)
    traj = [tuple(pos.tolist())]
    for t in range(1, n + 1):
        g = np.asarray(jumps[t - 1], dtype=np.int64) if jumps is not None else \
            geometric(rng.random(k), p)
        pos = _apply_jumps(pos, g, frozen=exit_t > 0)
        traj.append(tuple(pos.tolist()))
        hit = (exit_t == 0) & (pos >= n + 1 - t)
        exit_t[hit] = t
        if exit_t.all():
            break
    if not exit_t.all():
        raise AssertionError("a particle failed to exit by t = n")
    return ExitRecord(tuple(exit_t.tolist()), tuple(traj))


def displacement_batch(m: int, t: int, p: float, size: int,
                       rng: np.random.Generator) -> np.ndarray:
    """Displacement xi_m(t) - xi_m(0) of the m-th particle for ``size``
    independent runs without a wall, vectorized over runs."""
    pos = np.tile(np.arange(m, 0, -1, dtype=np.int64), (size, 1))
    for _ in range(t):
        pos = _apply_jumps(pos, geometric(rng.random((size, m)), p))
    return pos[:, m - 1] - 1


def exit_times_batch(k: int, n: int, p: float, size: int,
                     rng: np.random.Generator) -> np.ndarray:
    """Exit times of all k particles for ``size`` independent runs."""
    pos = np.tile(np.arange(k, 0, -1, dtype=np.int64), (size, 1))
    exit_t = np.zeros((size, k), dtype=np.int64)
    for t in range(1, n + 1):
        pos = _apply_jumps(pos, geometric(rng.random((size, k)), p), frozen=exit_t > 0)
        exit_t[(exit_t == 0) & (pos >= n + 1 - t)] = t
    return exit_t



def exact_exit_law(k: int, n: int, p) -> dict[tuple[int, ...], object]:
    """Exact law of the exit times (T(1), ..., T(k)) by enumerating jumps.

    A jump only matters up to min(gap, distance to the wall): past the wall
    a particle exits anyway, and a frozen leader's exact position never
    changes when its follower exits.  So each particle draws
    min(G, cap) with P(= m) = (1-p) p^m for m < cap and p^cap at the cap.
    Rational ``p`` (Fraction or str) gives exact Fractions.
    """
    from fractions import Fraction
    if isinstance(p, str):
        p = Fraction(p)
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    law: dict[tuple[int, ...], object] = {}

    def choices(cap):
        return [(m, (1 - p) * p ** m) for m in range(cap)] + [(cap, p ** cap)]

    def rec(t, pos, exits, mass):
        if all(exits):
            law[exits] = law.get(exits, 0) + mass
            return
        if t > n:
            raise AssertionError("a particle failed to exit by t = n")
        wall = n + 1 - t
        opts = []
        for i in range(k):
            if exits[i]:
                opts.append([(0, 1)])
                continue
            cap = wall - pos[i] if wall > pos[i] else 0
            if i > 0:
                cap = min(cap, pos[i - 1] - pos[i] - 1)
            opts.append(choices(cap))
        for combo in itertools.product(*opts):
            new = tuple(pos[i] + combo[i][0] for i in range(k))
            prob = mass
            for _, q in combo:
                prob *= q
            ex = tuple(e if e else (t if new[i] >= wall else 0) for i, e in enumerate(exits))
            rec(t + 1, new, ex, prob)

    rec(1, tuple(range(k, 0, -1)), (0,) * k, 1)
    return law


def exact_height_law(n: int, x: int, y: int, p) -> dict[int, object]:
    """Law of H(x,y) = #{i <= n-x+1 : T(i) >= y} from the exact exit law."""
    out: dict[int, object] = {}
    for T, q in exact_exit_law(n - x + 1, n, p).items():
        h = sum(1 for v in T if v >= y)
        out[h] = out.get(h, 0) + q
    return dict(sorted(out.items()))

BATCH = 4096


def height_cdf_via_tasep(n: int, x: int, y: int, h: int, p: float, samples: int,
                         seed: int = 0, threads: int | None = None) -> tuple[float, float]:
    """Estimate P(H(x,y) <= h) as P(T(n-x+1-h) <= y-1) with k = n-x+1.

    T(m) = 0 for m <= 0.  Returns (estimate, standard error).  Runs are
    grouped into fixed batches of ``BATCH``, batch b using stream (seed, b).
    """
    from .streams import indexed_map, stream
    if not (1 <= x <= n and 1 <= y <= n and 0 <= h <= n - x + 1):
        raise ValueError("arguments out of range")
    k = n - x + 1
    m = k - h
    if m <= 0:
        return 1.0, 0.0
    nb = -(-samples // BATCH)

    def one(b):
        size = min(BATCH, samples - b * BATCH)
        T = exit_times_batch(k, n, p, size, stream(seed, b))
        return int((T[:, m - 1] <= y - 1).sum())

    hits = sum(indexed_map(one, range(nb), threads))
    est = hits / samples
    return est, math.sqrt(max(est * (1 - est), 0.0) / samples)


def height_law_via_tasep(n: int, x: int, y: int, p: float, samples: int,
                         seed: int = 0, threads: int | None = None) -> np.ndarray:
    """Empirical counts of H(x,y) = 0..n-x+1 implied by the exit times.

    H(x,y) <= h iff T(k-h) <= y-1, so H = #{i : T(i) >= y}."""
    from .streams import indexed_map, stream
    k = n - x + 1
    nb = -(-samples // BATCH)

    def one(b):
        size = min(BATCH, samples - b * BATCH)
        T = exit_times_batch(k, n, p, size, stream(seed, b))
        return np.bincount((T >= y).sum(axis=1), minlength=k + 1)

    return np.sum(indexed_map(one, range(nb), threads), axis=0)


# --- Schur measure ---------------------------------------------------------

@dataclass(frozen=True)
class SchurSpec:
    m: int
    t: int
    p: float
    tail_mass_cutoff: float = 1e-8
    max_size: int = 5000


def _partitions(total: int, parts: int, cap: int | None = None):
    """Partitions of ``total`` with at most ``parts`` parts, each <= cap."""
    if cap is None:
        cap = total
    if total == 0:
        yield ()
        return
    if parts == 0:
        return
    for first in range(min(total, cap), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def schur_ones(lam: Sequence[int], m: int) -> int:
    """s_lambda(1^m) = prod_{i<j<=m} (lam_i - lam_j + j - i) / (j - i)."""
    lam = list(lam) + [0] * (m - len(lam))
    if len(lam) > m:
        return 0
    num = den = 1
    for i in range(m):
        for j in range(i + 1, m):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def schur_marginal_lastpart(spec: SchurSpec) -> dict[int, float]:
    """Law of lambda_m under the weight (1-p)^{mt} s(1^m) s(p^t).

    Sizes |lambda| are added until the enumerated mass reaches
    1 - cutoff (the Cauchy identity fixes the total at 1)."""
    m, t, p = spec.m, spec.t, spec.p
    ell = min(m, t)
    norm = (1 - p) ** (m * t)
    law: dict[int, float] = {}
    mass = 0.0
    for size in range(spec.max_size + 1):
        layer = 0.0
        for lam in _partitions(size, ell):
            wgt = norm * schur_ones(lam, m) * schur_ones(lam, t) * p ** size
            last = lam[m - 1] if len(lam) >= m else 0
            law[last] = law.get(last, 0.0) + wgt
            layer += wgt
        mass += layer
        if 1 - mass < spec.tail_mass_cutoff:
            return dict(sorted(law.items()))
    raise ValueError("tail mass cutoff not reached within max_size")


# --- limit constants -------------------------------------------------------

@dataclass(frozen=True)
class LimitConstants:
    c: float
    v1: float
    v2: float
    z_cr: float


def limit_constants(m: float, t: float, p: float) -> LimitConstants:
    """Law-of-large-numbers speed c and fluctuation scales v1, v2 of
    xi_{mL}(tL) / L, valid when t > m/p."""
    if m <= 0 or t <= 0 or not 0 < p < 1:
        raise ValueError("need m, t > 0 and 0 < p < 1")
    if t <= m / p:
        raise ValueError("v-constants need t > m/p (c = 0 there)")
    a = math.sqrt(p * t) - math.sqrt(m)
    b = math.sqrt(t / p) - math.sqrt(m)
    c = a * a / (1 - p)
    v1 = math.sqrt(p) * m ** (1 / 3) / t ** (1 / 6) * b ** (2 / 3) / a ** (1 / 3)
    v2 = math.sqrt(p) * a ** (2 / 3) * b ** (2 / 3) / ((m * t) ** (1 / 6) * (1 - p))
    return LimitConstants(c, v1, v2, a / b)


def speed(m: float, t: float, p: float) -> float:
    """c(m,t): zero when t <= m/p."""
    if t <= m / p:
        return 0.0
    return (math.sqrt(p * t) - math.sqrt(m)) ** 2 / (1 - p)


def inverse_v_sum(m: float, t: float, p: float) -> float:
    """Closed form of 1/v1 + 1/v2."""
    return (math.sqrt(t) - math.sqrt(m * p)) * t ** (1 / 6) / (
        m ** (1 / 3) * (math.sqrt(t / p) - math.sqrt(m)) ** (2 / 3)
        * (math.sqrt(t * p) - math.sqrt(m)) ** (2 / 3))


# --- emitters --------------------------------------------------------------

def trajectory_csv(rec: ExitRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    k = len(rec.exit_times)
    w.writerow(["t"] + [f"xi_{i}" for i in range(1, k + 1)])
    for t, row in enumerate(rec.trajectory):
        w.writerow([t, *row])
    return buf.getvalue()


def exit_csv(rec: ExitRecord) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "T_exit"])
    for i, T in enumerate(rec.exit_times, start=1):
        w.writerow([i, T])
    return buf.getvalue()
