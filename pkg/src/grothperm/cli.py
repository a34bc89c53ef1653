"""Command-line entry point: ``grothperm <verb> [flags]``.

Exit status: 0 on success, 1 when a validation check fails, 2 on a usage
error.  Monte Carlo verbs take ``--seed`` and ``--threads`` (default from
the GROTHPERM_THREADS environment variable); output depends only on the
seed and the other flags.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction


from .emit import csv_text, fmt, pgm_text
from .streams import THREADS_ENV, indexed_map, stream

HEATMAP_CHUNK = 16


class UsageError(Exception):
    pass


def _perm_text(w) -> str:
    return " ".join(map(str, w))


def _prob(text: str) -> float:
    v = float(Fraction(text))
    if not 0 <= v <= 1:
        raise argparse.ArgumentTypeError(f"{text} is not in [0,1]")
    return v


def _open_prob(text: str) -> float:
    v = _prob(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not in (0,1)")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text} is negative")
    return v


# --- verbs -------------------------------------------------------------------

def cmd_sample(a) -> str:
    from .pipedream import sample_permutation
    from .vertex_model import sample_colored
    if a.sampler == "vertex":
        if a.q != 0:
            raise UsageError("the vertex sampler has no q parameter")
        fn = lambda s: sample_colored(a.n, a.p, stream(a.seed, s))  # noqa: E731
    else:
        fn = lambda s: sample_permutation(a.n, a.p, stream(a.seed, s), q=a.q)  # noqa: E731
    perms = indexed_map(fn, range(a.samples), a.threads)
    return csv_text(["sample", "permutation"], ((s, _perm_text(w)) for s, w in enumerate(perms)))


def cmd_heatmap(a) -> str:
    from .permuton import EmpiricalGrid
    from .pipedream import sample_permutation
    if a.grid > a.n:
        raise UsageError("--grid must not exceed --n")

    def chunk(c):
        g = EmpiricalGrid(a.n, a.grid)
        for s in range(c * HEATMAP_CHUNK, min((c + 1) * HEATMAP_CHUNK, a.samples)):
            g.add(sample_permutation(a.n, a.p, stream(a.seed, s), q=a.q))
        return g

    grid = EmpiricalGrid(a.n, a.grid)
    for g in indexed_map(chunk, range(-(-a.samples // HEATMAP_CHUNK)), a.threads):
        grid = grid.merge(g)
    if a.format == "csv":
        rows = ((v, j, int(grid.counts[v, j])) for v in range(a.grid) for j in range(a.grid))
        return csv_text(["value_bin", "position_bin", "count"], rows)
    comments = [f"grothperm heatmap n={a.n} p={a.p} q={a.q} samples={a.samples} seed={a.seed}",
                "gray = round(255 * count / max count); columns are positions left to right,",
                "rows are values with the largest values on top"]
    return pgm_text(grid.counts[::-1], comments)


def cmd_limit_shape(a) -> str:
    from .permuton import limit_surface
    rows = limit_surface(a.p, a.grid)
    return csv_text(["x", "y", "h"], ([fmt(x), fmt(y), fmt(h)] for x, y, h in rows))


def cmd_tasep(a) -> str:
    from .tasep import exit_csv, run_with_exit_boundary, trajectory_csv
    if not 1 <= a.k <= a.n:
        raise UsageError("need 1 <= k <= n")
    if a.samples == 1:
        rec = run_with_exit_boundary(a.k, a.n, a.p, stream(a.seed, 0))
        return trajectory_csv(rec) if a.what == "trajectory" else exit_csv(rec)
    recs = indexed_map(lambda s: run_with_exit_boundary(a.k, a.n, a.p, stream(a.seed, s)),
                       range(a.samples), a.threads)
    header = ["run"] + [f"T_{i}" for i in range(1, a.k + 1)]
    return csv_text(header, ([s, *r.exit_times] for s, r in enumerate(recs)))


def cmd_fluct(a) -> str:
    from .acceptance import fluctuation_samples
    from .permuton import zone
    from .stats import ks_vs_cdf
    from .tracy_widom import tw2_cdf, tw2_moments
    if zone(a.x, a.y, a.p) != "C":
        raise UsageError(f"({a.x}, {a.y}) is not an interior point of the curved zone")
    z = fluctuation_samples(a.n, a.p, a.x, a.y, a.samples, a.seed, a.threads)
    if not a.summary:
        return csv_text(["sample", "z"], ((s, fmt(v)) for s, v in enumerate(z)))
    mean, sd = tw2_moments()
    ks, pv = ks_vs_cdf(z, tw2_cdf)
    header = ["n", "p", "x", "y", "samples", "mean", "sd", "tw_mean", "tw_sd", "ks", "ks_pvalue"]
    row = [a.n, a.p, a.x, a.y, a.samples, fmt(z.mean()), fmt(z.std(ddof=1) if len(z) > 1 else 0.0),
           fmt(mean), fmt(sd), fmt(ks), fmt(pv)]
    return csv_text(header, [row])


def cmd_nonreduced(a) -> str:
    import math

    from .nonreduced import KAPPA, inversion_scaling_experiment
    (im, ise), (dm, dse) = inversion_scaling_experiment(a.n, a.p, a.samples, a.seed, a.threads)
    pred = KAPPA * math.sqrt(a.p / (1 - a.p))
    header = ["n", "p", "samples", "inv_mean", "inv_se", "dis_mean", "dis_se", "inv_limit"]
    return csv_text(header, [[a.n, a.p, a.samples, fmt(im), fmt(ise), fmt(dm), fmt(dse), fmt(pred)]])


def cmd_exact(a) -> str:
    from .exact_groth import upsilon_layered, upsilon_w0
    from .perm_core import Permutation
    beta = Fraction(a.beta)
    if a.w0 is not None:
        k, n = a.w0
        if k < 0 or n < 1:
            raise UsageError("--w0 needs k >= 0 and n >= 1")
        if a.route == "bpd":
            raise UsageError("the bpd route needs --perm")
        val = upsilon_w0(k, n, beta, a.route or "narayana")
    elif a.layered is not None:
        if a.route is not None:
            raise UsageError("--route does not apply to --layered")
        val = upsilon_layered(tuple(int(s) for s in a.layered.split("-")), beta)
    else:
        w = Permutation.parse(a.perm)
        if a.route not in (None, "bpd"):
            raise UsageError("--perm takes no route or --route bpd")
        if a.route == "bpd":
            from .bpd_asm import upsilon_via_bpd
            val = upsilon_via_bpd(w, beta)
        else:
            from .pipedream import upsilon_bruteforce
            val = upsilon_bruteforce(w, beta)
    return f"{val}\n"


def cmd_optimize_layered(a) -> str:
    from .acceptance import REFERENCE_LAYERED
    from .exact_groth import layered_table
    ns = sorted(REFERENCE_LAYERED) if a.reference else sorted(set(a.n or []))
    if not ns:
        raise UsageError("give --n or --reference")
    if min(ns) < 2:
        raise UsageError("orders must be at least 2")
    rows = layered_table(ns)
    return csv_text(["n", "composition", "f"], (r.row().split(",") for r in rows))


def cmd_bpd(a) -> str:
    from .bpd_asm import bpds_of, enumerate_bpd, two_asm_law
    from .exact_groth import asm_count
    from .perm_core import Permutation
    from .pipedream import exact_distribution
    if a.perm:
        w = Permutation.parse(a.perm)
        return "\n".join(d.to_text() for d in bpds_of(w))
    if a.n > 5:
        raise UsageError("enumeration is capped at n = 5")
    rows = []
    for n in range(1, a.n + 1):
        count = sum(1 for _ in enumerate_bpd(n))
        same = two_asm_law(n) == exact_distribution(n, Fraction(1, 2))
        rows.append([n, count, asm_count(n), int(same)])
    return csv_text(["n", "bpds", "asm_formula", "two_asm_law_matches"], rows)


def cmd_validate(a) -> str:
    from .acceptance import CRITERIA, run
    keys = sorted(CRITERIA) if not a.only else [int(s) for s in a.only.split(",")]
    if any(k not in CRITERIA for k in keys):
        raise UsageError(f"criteria are numbered 1..{len(CRITERIA)}")
    results = run(keys, quick=a.quick, echo=lambda s: print(s, flush=True))
    a._failed = not all(r.passed for r in results)
    return ""


# --- parser ------------------------------------------------------------------

VERBS = {
    "sample": (cmd_sample, "Sample Grothendieck random permutations.",
               "CSV columns: sample (index), permutation (images w_1..w_n, space separated)."),
    "heatmap": (cmd_heatmap, "Histogram of permutation points on a grid.",
                "PGM (P2) by default: max-cell normalized gray, values increase upward. "
                "CSV columns: value_bin, position_bin, count."),
    "limit-shape": (cmd_limit_shape, "Limiting height surface on a grid.",
                    "CSV columns: x, y, h on the (grid+1)^2 lattice of the unit square."),
    "tasep": (cmd_tasep, "TASEP with the moving exit wall.",
              "One run: CSV t, xi_1..xi_k (trajectory) or i, T_exit (exits). "
              "Several runs: CSV run, T_1..T_k."),
    "fluct": (cmd_fluct, "Standardized height fluctuations against Tracy-Widom.",
              "CSV columns: sample, z with z = (H - n h) v / n^(1/3). With --summary: "
              "n, p, x, y, samples, mean, sd, tw_mean, tw_sd, ks, ks_pvalue."),
    "nonreduced": (cmd_nonreduced, "Inversions of the non-reduced model.",
                   "CSV columns: n, p, samples, inv_mean, inv_se, dis_mean, dis_se, inv_limit "
                   "(all scaled by n^(3/2))."),
    "exact": (cmd_exact, "Exact Grothendieck specializations.",
              "Prints one exact rational value."),
    "optimize-layered": (cmd_optimize_layered, "Best layered permutations.",
                         "CSV columns: n, composition (dash separated), f (five decimals)."),
    "bpd": (cmd_bpd, "Bumpless pipe dream checks.",
            "CSV columns: n, bpds, asm_formula, two_asm_law_matches (1/0). "
            "With --perm: the tile grids of every bumpless dream of w, blank-line separated."),
    "validate": (cmd_validate, "Run the acceptance suite.",
                 "One line per criterion; exit status 1 if any fails."),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grothperm", description="Grothendieck random permutations and friends.",
        epilog=f"The worker count defaults to ${THREADS_ENV} (or 1).")
    subs = parser.add_subparsers(dest="verb", required=True, metavar="verb")
    sp = {}
    for name, (fn, help_, schema) in VERBS.items():
        s = subs.add_parser(name, help=help_, description=f"{help_} {schema}")
        s.set_defaults(func=fn)
        s.add_argument("--out", help="write to this file instead of stdout")
        s.add_argument("--threads", type=_positive, default=None,
                       help=f"worker threads (default ${THREADS_ENV} or 1)")
        sp[name] = s

    for name in ("sample", "heatmap", "tasep", "fluct", "nonreduced"):
        sp[name].add_argument("--seed", type=_nonneg, default=0)
    for name in ("sample", "heatmap"):
        sp[name].add_argument("--n", type=_positive, required=True)
        sp[name].add_argument("--p", type=_prob, default=0.5)
        sp[name].add_argument("--q", type=_prob, default=0.0)
    sp["sample"].add_argument("--samples", type=_positive, default=1)
    sp["sample"].add_argument("--sampler", choices=("pipedream", "vertex"), default="pipedream")
    sp["heatmap"].add_argument("--samples", type=_positive, default=1)
    sp["heatmap"].add_argument("--grid", type=_positive, default=100)
    sp["heatmap"].add_argument("--format", choices=("pgm", "csv"), default="pgm")

    sp["limit-shape"].add_argument("--p", type=_open_prob, default=0.5)
    sp["limit-shape"].add_argument("--grid", type=_positive, default=50)

    t = sp["tasep"]
    t.add_argument("--k", type=_positive, required=True)
    t.add_argument("--n", type=_positive, required=True)
    t.add_argument("--p", type=_prob, default=0.5)
    t.add_argument("--samples", type=_positive, default=1)
    t.add_argument("--what", choices=("trajectory", "exits"), default="trajectory")

    f = sp["fluct"]
    f.add_argument("--n", type=_positive, required=True)
    f.add_argument("--p", type=_open_prob, default=0.5)
    f.add_argument("--x", type=float, default=0.5)
    f.add_argument("--y", type=float, default=0.5)
    f.add_argument("--samples", type=_positive, default=100)
    f.add_argument("--summary", action="store_true")

    r = sp["nonreduced"]
    r.add_argument("--n", type=_positive, required=True)
    r.add_argument("--p", type=_open_prob, default=0.5)
    r.add_argument("--samples", type=_positive, default=100)

    e = sp["exact"]
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--w0", type=int, nargs=2, metavar=("K", "N"),
                   help="the permutation id_K x w0(N)")
    g.add_argument("--layered", metavar="B", help="composition such as 1-3-5")
    g.add_argument("--perm", metavar="W", help="any permutation (order <= 7)")
    e.add_argument("--beta", default="1", help="rational beta (default 1)")
    e.add_argument("--route", default=None,
                   choices=("narayana", "schroeder", "large", "proctor", "bpd"))

    o = sp["optimize-layered"]
    o.add_argument("--n", type=_positive, action="append")
    o.add_argument("--reference", action="store_true", help="all orders of the reference table")

    b = sp["bpd"]
    b.add_argument("--n", type=_positive, default=5)
    b.add_argument("--perm", help="list the bumpless dreams of this permutation")

    v = sp["validate"]
    v.add_argument("--quick", action="store_true", help="smaller Monte Carlo sizes")
    v.add_argument("--only", help="comma separated criterion numbers")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        text = args.func(args)
    except (UsageError, ValueError, ZeroDivisionError) as e:
        print(f"grothperm {args.verb}: error: {e}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    elif text:
        sys.stdout.write(text)
    return 1 if getattr(args, "_failed", False) else 0


if __name__ == "__main__":
    sys.exit(main())
