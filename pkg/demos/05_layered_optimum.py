"""Largest Grothendieck specialization among layered permutations.

Block values come from one Hankel condensation table; a dynamic program
over the last block picks the composition."""
import math

from grothperm.exact_groth import beta_bounds, layered_table, upsilon_layered, upsilon_w0

print("Y(id_1 x w0(2)) =", upsilon_w0(1, 2), " Y(w0(3)) =", upsilon_w0(0, 3))
print("Y(layered 1-3) =", upsilon_layered((1, 3)))
for r in layered_table([4, 10, 30, 60, 120]):
    print(r.row(), f" margin to runner-up {r.margin:.3g} bits")
lo, hi = beta_bounds(1.0)
print(f"limit of log2 max / n^2 at beta=1 lies in [{lo}, {hi}]")
