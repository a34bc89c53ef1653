"""The acceptance suite: eleven end-to-end checks with fixed seeds.

Each ``criterion_k`` returns a :class:`Result`.  ``quick=True`` shrinks
the Monte Carlo sizes for a smoke run; the stated tolerances are kept, so
a quick run is noisier but never more lenient.
"""
from __future__ import annotations

import io
import math
import time
from contextlib import redirect_stdout
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

import numpy as np

SEED = 1

# Worked examples.
FIG1_CROSSES = [(1, 1), (1, 2), (1, 4), (2, 3), (2, 4), (3, 1), (3, 2), (4, 2), (5, 1)]
DEMAZURE_WORD = (5, 5, 3, 4, 1, 2, 4, 5, 4)
BPD_EXAMPLE = """\
.....r--
...r-Jr-
..r+--+-
.rJ|r-+-
rJr++-Jr
|rJ||r-+
||r+++-+
||||||r+
"""
TASEP_SEED = 380
TASEP_JUMPS = [(2, 0, 0), (0, 1, 0), (0, 1, 1), (0, 0, 0), (0, 0, 0), (0, 0, 0)]
TASEP_TRAJECTORY = ((3, 2, 1), (5, 2, 1), (5, 3, 1), (5, 4, 2), (5, 4, 2), (5, 4, 2))

# Reference optima: n -> (composition, f(n) to five decimals).
REFERENCE_LAYERED = {
    2: ((1, 1), "0.00000"), 3: ((1, 2), "0.17611"), 4: ((1, 3), "0.21621"),
    5: ((1, 1, 3), "0.24599"), 6: ((1, 2, 3), "0.28068"), 7: ((1, 2, 4), "0.31068"),
    8: ((1, 2, 5), "0.32354"), 9: ((1, 3, 5), "0.33953"), 10: ((1, 1, 3, 5), "0.34821"),
    11: ((1, 1, 3, 6), "0.35956"), 12: ((1, 2, 3, 6), "0.36955"),
    13: ((1, 2, 4, 6), "0.37800"), 14: ((1, 2, 4, 7), "0.38614"),
    15: ((1, 2, 4, 8), "0.39085"), 16: ((1, 2, 5, 8), "0.39618"),
    17: ((1, 3, 5, 8), "0.40138"), 18: ((1, 3, 5, 9), "0.40550"),
    19: ((1, 1, 3, 5, 9), "0.40887"), 20: ((1, 1, 3, 6, 9), "0.41252"),
    21: ((1, 1, 3, 6, 10), "0.41605"), 22: ((1, 2, 3, 6, 10), "0.41946"),
    23: ((1, 2, 4, 6, 10), "0.42223"), 24: ((1, 2, 4, 6, 11), "0.42517"),
    25: ((1, 2, 4, 7, 11), "0.42797"), 26: ((1, 2, 4, 7, 12), "0.43021"),
    27: ((1, 2, 4, 8, 12), "0.43206"), 28: ((1, 2, 5, 8, 12), "0.43392"),
    29: ((1, 2, 5, 8, 13), "0.43590"), 30: ((1, 3, 5, 8, 13), "0.43780"),
    40: ((1, 2, 4, 6, 10, 17), "0.45099"), 50: ((1, 3, 5, 8, 13, 20), "0.45956"),
    60: ((1, 1, 3, 6, 10, 15, 24), "0.46537"), 70: ((1, 2, 4, 7, 11, 18, 27), "0.46983"),
    80: ((1, 2, 5, 8, 13, 20, 31), "0.47312"), 90: ((1, 1, 3, 5, 9, 14, 23, 34), "0.47573"),
    100: ((1, 2, 3, 6, 10, 16, 25, 37), "0.47792"),
    110: ((1, 2, 4, 7, 11, 17, 27, 41), "0.47975"),
    120: ((1, 2, 4, 8, 12, 19, 30, 44), "0.48125"),
}


@dataclass
class Result:
    key: int
    name: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.key:2d} [{status}] {self.name} ({self.seconds:.1f} s): " + \
            "; ".join(self.details)


class _Checker:
    def __init__(self, key: int, name: str):
        self.result = Result(key, name, True)
        self._t0 = time.perf_counter()

    def check(self, ok: bool, msg: str):
        ok = bool(ok)
        self.result.details.append(("" if ok else "FAILED ") + msg)
        self.result.passed &= ok

    def elapsed(self) -> float:
        return time.perf_counter() - self._t0

    def done(self) -> Result:
        self.result.seconds = self.elapsed()
        return self.result


# --- 1 -----------------------------------------------------------------------

def criterion_1(quick: bool = False) -> Result:
    from .pipedream import cross_count_table, upsilon_bruteforce
    c = _Checker(1, "exact partition function")
    bad = []
    for n in range(2, 7):
        total = sum(upsilon_bruteforce(w, 1) for w in cross_count_table(n))
        if total != 2 ** comb(n, 2):
            bad.append(n)
    c.check(not bad, f"sum of Y_w(1) equals 2^C(n,2) for n=2..6" + (f" except {bad}" if bad else ""))
    c.check(c.elapsed() < 10, f"runtime {c.elapsed():.1f} s < 10 s")
    return c.done()


# --- 2 -----------------------------------------------------------------------

def criterion_2(quick: bool = False) -> Result:
    from .bpd_asm import BumplessPipeDream, bpd_permutation, repeated_crossings
    from .perm_core import Permutation, demazure_product
    from .pipedream import PipeDream, permutation_of, q_reduce
    from .streams import stream
    from .tasep import run_with_exit_boundary
    c = _Checker(2, "worked examples")
    d = PipeDream.from_crosses(6, FIG1_CROSSES)
    c.check(str(permutation_of(d)) == "241653", f"tiling reduces to {permutation_of(d)}")
    c.check(str(q_reduce(d, 1.0)) == "241635", f"tiling with q=1 gives {q_reduce(d, 1.0)}")
    dw = demazure_product(DEMAZURE_WORD, 6)
    c.check(str(dw) == "316254", f"Demazure word gives {dw}")
    b = BumplessPipeDream.from_text(BPD_EXAMPLE)
    wb = bpd_permutation(b)
    c.check(wb == Permutation.parse("45128637") and bpd_permutation(b, "demazure") == wb
            and repeated_crossings(b) == {(2, 5)} and b.tiles[4][7] == "r",
            f"bumpless dream gives {wb} with one bounce of pipes 2,5")
    seeded = run_with_exit_boundary(3, 6, 0.5, stream(TASEP_SEED, 0))
    drawn = run_with_exit_boundary(3, 6, 0.5, jumps=TASEP_JUMPS)
    c.check(seeded.trajectory == drawn.trajectory == TASEP_TRAJECTORY
            and seeded.exit_times == (2, 3, 5),
            f"seed {TASEP_SEED} trajectory gives exit times {seeded.exit_times}")
    return c.done()


# --- 3 -----------------------------------------------------------------------

def _height_law(law: dict, x: int, y: int) -> dict:
    from .perm_core import height
    out: dict = {}
    for w, q in law.items():
        h = height(w, x, y)
        out[h] = out.get(h, 0) + q
    return {h: q for h, q in out.items() if q}


def criterion_3(quick: bool = False) -> Result:
    from .perm_core import height_table
    from .pipedream import exact_distribution, sample_permutation
    from .stats import chi_square_two_sample
    from .streams import indexed_map, stream
    from .tasep import exact_height_law, height_law_via_tasep
    from .vertex_model import exact_colored_law, sample_colored
    c = _Checker(3, "three-sampler agreement")
    half = Fraction(1, 2)
    mismatches = 0
    for n in range(1, 5):
        pd = exact_distribution(n, half)
        vx = exact_colored_law(n, half)
        for x in range(1, n + 1):
            for y in range(1, n + 1):
                a, b = _height_law(pd, x, y), _height_law(vx, x, y)
                t = {h: q for h, q in exact_height_law(n, x, y, half).items() if q}
                mismatches += not (a == b == t)
    c.check(mismatches == 0, "exact height laws agree at every (x,y) for n<=4")

    n, samples = 50, (20_000 if quick else 100_000)
    points = [(25, 25), (15, 35)]

    def heights(sampler, seed):
        def one(s):
            H = height_table(sampler(n, 0.5, stream(seed, s)))
            return [H[x, y] for x, y in points]
        return np.array(indexed_map(one, range(samples)))

    hp = heights(sample_permutation, SEED)
    hv = heights(sample_colored, SEED + 1)
    for k, (x, y) in enumerate(points):
        cp = np.bincount(hp[:, k], minlength=n + 2)
        cv = np.bincount(hv[:, k], minlength=n + 2)
        ct = height_law_via_tasep(n, x, y, 0.5, samples, seed=SEED + 2)
        ct = np.pad(ct, (0, n + 2 - len(ct)))
        for label, a, b in (("dream/vertex", cp, cv), ("dream/tasep", cp, ct),
                            ("vertex/tasep", cv, ct)):
            _, pv, _ = chi_square_two_sample(a, b)
            c.check(pv > 0.01, f"n=50 H({x},{y}) {label} chi-square p={pv:.3f}")
    return c.done()


# --- 4 -----------------------------------------------------------------------

def _ulp_close(got: str, want: str) -> bool:
    return abs(round(float(got) * 1e5) - round(float(want) * 1e5)) <= 1


def criterion_4(quick: bool = False) -> Result:
    from .exact_groth import layered_table
    c = _Checker(4, "layered optimum table")
    ns = sorted(k for k in REFERENCE_LAYERED if not quick or k <= 30)
    rows = layered_table(ns)
    comp_bad, f_bad, ulp = [], [], []
    for r in rows:
        comp, f = REFERENCE_LAYERED[r.n]
        got = r.row().split(",")[2]
        if r.b != comp:
            comp_bad.append(r.n)
        if not _ulp_close(got, f):
            f_bad.append(r.n)
        elif got != f:
            ulp.append(f"n={r.n} {got} vs {f}")
    c.check(not comp_bad, f"compositions match for {len(rows)} orders" +
            (f" except {comp_bad}" if comp_bad else ""))
    c.check(not f_bad, "f(n) within one unit in the fifth decimal" +
            (f" except {f_bad}" if f_bad else "") + (f" (last-digit: {', '.join(ulp)})" if ulp else ""))
    c.check(c.elapsed() < 600, f"runtime {c.elapsed():.1f} s < 600 s")
    return c.done()


# --- 5 -----------------------------------------------------------------------

def _compositions(n: int):
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def criterion_5(quick: bool = False) -> Result:
    from .exact_groth import hankel_det, proctor, upsilon_layered, upsilon_w0
    from .perm_core import layered, w0_block
    from .pipedream import upsilon_bruteforce
    c = _Checker(5, "determinant identities")
    kmax = 6 if quick else 10
    bad = [(k, n) for k in range(kmax + 1) for n in range(kmax + 1)
           if proctor(k, n) != hankel_det(0, n, k)]
    c.check(not bad, f"Proctor product equals Catalan Hankel determinant for k,n<={kmax}")
    bad = [(k, n) for k in range(8) for n in range(1, 12)
           if upsilon_w0(k, n, 1, "schroeder") != upsilon_w0(k, n, 1)
           or upsilon_w0(k, n, 1, "large") != upsilon_w0(k, n, 1)]
    c.check(not bad, "Schroeder routes equal the Narayana route at beta=1")
    checked, bad = 0, []
    for total in range(1, 7):
        for k in range(total):
            w = w0_block(k, total - k)
            for beta in (0, 1, 2):
                routes = [upsilon_w0(k, total - k, beta)]
                if beta == 1:
                    routes += [upsilon_w0(k, total - k, 1, "schroeder"),
                               upsilon_w0(k, total - k, 1, "large")]
                if beta == 0:
                    routes.append(upsilon_w0(k, total - k, 0, "proctor"))
                ref = upsilon_bruteforce(w, beta)
                checked += 1
                if any(r != ref for r in routes):
                    bad.append((k, total - k, beta))
        for b in _compositions(total):
            for beta in (0, 1, 2):
                checked += 1
                if upsilon_layered(b, beta) != upsilon_bruteforce(layered(b), beta):
                    bad.append((b, beta))
    c.check(not bad, f"{checked} closed-form values equal brute force for order<=6" +
            (f" except {bad[:5]}" if bad else ""))
    return c.done()


# --- 6 -----------------------------------------------------------------------

def criterion_6(quick: bool = False) -> Result:
    from .perm_core import inversions
    from .permuton import EmpiricalGrid, compare_height, gamma_p
    from .pipedream import sample_permutation
    from .streams import indexed_map, stream
    c = _Checker(6, "permuton law of large numbers")
    n, samples, p = 2000, (50 if quick else 200), 0.5

    def one(s):
        w = sample_permutation(n, p, stream(SEED, s))
        return EmpiricalGrid(n).add(w), inversions(w)

    out = indexed_map(one, range(samples))
    grid = EmpiricalGrid(n)
    for g, _ in out:
        grid = grid.merge(g)
    dmax, dmean = compare_height(grid, p)
    c.check(dmax < 0.02, f"max |H/n - h| = {dmax:.4f} < 0.02 (mean {dmean:.5f})")
    inv = np.mean([a for _, a in out]) / comb(n, 2)
    c.check(abs(inv - gamma_p(p)) < 0.01,
            f"inv/C(n,2) = {inv:.4f} vs {gamma_p(p):.4f}")
    c.check(c.elapsed() < 1200, f"runtime {c.elapsed():.1f} s < 1200 s")
    return c.done()


# --- 7 -----------------------------------------------------------------------

def fluctuation_samples(n: int, p: float, xbar: float, ybar: float, samples: int,
                        seed: int = SEED, threads: int | None = None) -> np.ndarray:
    """(H - n h) v / n^{1/3} at (floor(n xbar), floor(n ybar))."""
    from .perm_core import height
    from .permuton import fluct_constant, limit_height
    from .pipedream import sample_permutation
    from .streams import indexed_map, stream
    x, y = int(n * xbar), int(n * ybar)
    v = fluct_constant(xbar, ybar, p)
    h = limit_height(xbar, ybar, p)
    H = np.array(indexed_map(lambda s: height(sample_permutation(n, p, stream(seed, s)), x, y),
                             range(samples), threads), dtype=float)
    return (H - n * h) * v / n ** (1 / 3)


def criterion_7(quick: bool = False) -> Result:
    from .stats import ks_vs_cdf
    from .tracy_widom import tw2_cdf, tw2_moments
    c = _Checker(7, "Tracy-Widom fluctuations")
    mean, sd = tw2_moments()
    mean2, sd2 = tw2_moments(nodes=120, m=160)
    c.check(abs(mean - mean2) < 1e-6 and abs(sd - sd2) < 1e-6,
            f"TW mean {mean:.6f}, sd {sd:.6f} stable under refinement")
    n, samples = 4000, (100 if quick else 500)
    z = fluctuation_samples(n, 0.5, 0.5, 0.5, samples)
    ks, pv = ks_vs_cdf(z, tw2_cdf)
    c.check(abs(z.mean() - mean) < 0.2, f"sample mean {z.mean():.3f} vs {mean:.3f} (tol 0.2)")
    c.check(abs(z.std(ddof=1) - sd) < 0.15, f"sample sd {z.std(ddof=1):.3f} vs {sd:.3f} (tol 0.15)")
    c.result.details.append(f"KS vs F2 {ks:.3f} (p={pv:.2g}), reported only")
    return c.done()


# --- 8 -----------------------------------------------------------------------

def criterion_8(quick: bool = False) -> Result:
    from .nonreduced import (KAPPA, LOWER, UPPER, exit_law,
                             inversion_scaling_experiment, sample_nonreduced)
    from .stats import chi_square
    from .streams import indexed_map, stream
    c = _Checker(8, "non-reduced model")
    n, samples = 6, (20_000 if quick else 100_000)
    inv = np.array(indexed_map(lambda s: sample_nonreduced(n, 0.5, stream(SEED, s)).inverse().images,
                               range(samples)))
    for i in range(1, n + 1):
        law = exit_law(n, i, Fraction(1, 2))
        prob = [float(law[j]) for j in range(1, n + 1)]
        obs = np.bincount(inv[:, i - 1], minlength=n + 1)[1:]
        _, pv, _ = chi_square(obs, prob)
        c.check(pv > 0.01, f"exit law of pipe {i} chi-square p={pv:.3f}")
    big, p = 4000, 0.5
    (a, se), _ = inversion_scaling_experiment(big, p, 50 if quick else 200, seed=SEED)
    s = math.sqrt(p / (1 - p))
    c.check(LOWER * s <= a <= UPPER * s, f"inv/n^1.5 = {a:.4f} (se {se:.4f}) in "
            f"[{LOWER * s:.3f}, {UPPER * s:.3f}]")
    c.check(abs(a - KAPPA * s) <= 0.1 * KAPPA * s,
            f"within 10% of {KAPPA * s:.4f} ({(a / (KAPPA * s) - 1) * 100:+.1f}%)")
    return c.done()


# --- 9 -----------------------------------------------------------------------

def criterion_9(quick: bool = False) -> Result:
    from .bpd_asm import clt_experiment, enumerate_bpd, two_asm_law
    from .exact_groth import asm_count
    from .pipedream import exact_distribution
    c = _Checker(9, "bumpless dreams and ASMs")
    counts = tuple(sum(1 for _ in enumerate_bpd(n)) for n in range(1, 6))
    c.check(counts == (1, 2, 7, 42, 429) == tuple(asm_count(n) for n in range(1, 6)),
            f"counts {counts}")
    eq = all(two_asm_law(n) == exact_distribution(n, Fraction(1, 2)) for n in range(1, 6))
    c.check(eq, "2-ASM law equals the p=1/2 dream law for n<=5")
    ks, pv, _ = clt_experiment(2000, 500 if quick else 2000, seed=SEED)
    c.check(ks < 0.05, f"CLT KS = {ks:.4f} < 0.05 (p={pv:.2g})")
    return c.done()


# --- 10 ----------------------------------------------------------------------

def criterion_10(quick: bool = False) -> Result:
    from .stats import total_variation
    from .streams import stream
    from .tasep import BATCH, SchurSpec, displacement_batch, schur_marginal_lastpart
    c = _Checker(10, "Schur marginal")
    samples = 100_000 if quick else 1_000_000
    for m, t in ((1, 2), (2, 3), (3, 3)):
        for p in (0.25, 0.5):
            law = schur_marginal_lastpart(SchurSpec(m, t, p))
            d = np.concatenate([displacement_batch(m, t, p, min(BATCH, samples - b * BATCH),
                                                   stream(SEED, b))
                                for b in range(-(-samples // BATCH))])
            emp = np.bincount(d) / len(d)
            tv = total_variation(law, dict(enumerate(emp)))
            c.check(tv < 0.01, f"(m,t,p)=({m},{t},{p}) TV {tv:.4f}")
    return c.done()


# --- 11 ----------------------------------------------------------------------

DETERMINISM_RUNS = [
    ["sample", "--n", "12", "--p", "0.5", "--samples", "40", "--seed", "7"],
    ["sample", "--n", "12", "--p", "0.5", "--q", "0.3", "--samples", "40", "--seed", "7"],
    ["sample", "--n", "12", "--p", "0.5", "--samples", "40", "--seed", "7", "--sampler", "vertex"],
    ["heatmap", "--n", "60", "--p", "0.5", "--samples", "30", "--grid", "20", "--seed", "7"],
    ["heatmap", "--n", "60", "--p", "0.5", "--samples", "30", "--grid", "20", "--seed", "7",
     "--format", "csv"],
    ["limit-shape", "--p", "0.5", "--grid", "10"],
    ["tasep", "--k", "3", "--n", "6", "--p", "0.5", "--seed", "380"],
    ["tasep", "--k", "4", "--n", "10", "--p", "0.5", "--seed", "7", "--samples", "25"],
    ["fluct", "--n", "200", "--p", "0.5", "--samples", "20", "--seed", "7"],
    ["nonreduced", "--n", "50", "--p", "0.5", "--samples", "20", "--seed", "7"],
    ["exact", "--w0", "2", "3", "--beta", "1"],
    ["optimize-layered", "--n", "12"],
    ["bpd", "--n", "4"],
]


def criterion_11(quick: bool = False) -> Result:
    from .cli import main
    c = _Checker(11, "determinism across thread budgets")
    budgets = (1, 4) if quick else (1, 4, 16)
    for argv in DETERMINISM_RUNS:
        outs = []
        for th in budgets:
            buf = io.StringIO()
            with redirect_stdout(buf):
                status = main(argv + ["--threads", str(th)])
            outs.append((status, buf.getvalue()))
        same = all(o == outs[0] for o in outs) and outs[0][0] == 0 and outs[0][1]
        c.check(same, f"{argv[0]} identical across threads {budgets}")
    return c.done()


CRITERIA: dict[int, Callable[..., Result]] = {
    k: globals()[f"criterion_{k}"] for k in range(1, 12)}


def run(keys=None, quick: bool = False, echo: Callable[[str], None] | None = print) -> list[Result]:
    out = []
    for k in keys or sorted(CRITERIA):
        r = CRITERIA[k](quick=quick)
        if echo:
            echo(r.line())
        out.append(r)
    return out
