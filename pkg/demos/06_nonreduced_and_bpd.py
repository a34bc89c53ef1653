"""Two side models: keeping every cross, and bumpless pipe dreams."""
import math
from fractions import Fraction

from grothperm.bpd_asm import clt_experiment, enumerate_bpd, two_asm_law
from grothperm.exact_groth import asm_count
from grothperm.nonreduced import KAPPA, exit_law, inversion_scaling_experiment
from grothperm.pipedream import exact_distribution

law = exit_law(6, 3, Fraction(1, 2))
print("pipe 3 of 6 exits at column:", {j: str(q) for j, q in law.items()})
(inv, se), _ = inversion_scaling_experiment(1000, 0.5, 20, seed=4)
print(f"inv / n^1.5 at n=1000: {inv:.4f} +- {se:.4f}, limit {KAPPA:.4f}")

for n in range(1, 6):
    print(f"n={n}: {sum(1 for _ in enumerate_bpd(n))} bumpless dreams, {asm_count(n)} ASMs,",
          "2-ASM law equals dream law:", two_asm_law(n) == exact_distribution(n, Fraction(1, 2)))
ks, pv, z = clt_experiment(1000, 300, seed=4)
print(f"last letter CLT at n=1000: KS {ks:.3f}, standardized mean {z.mean():+.3f}")
