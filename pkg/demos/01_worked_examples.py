"""Walk through the small worked examples: one tiling, one Demazure word,
one bumpless pipe dream and one TASEP run with an exit wall."""
from grothperm.acceptance import BPD_EXAMPLE, FIG1_CROSSES, TASEP_JUMPS
from grothperm.bpd_asm import BumplessPipeDream, bpd_permutation, repeated_crossings
from grothperm.perm_core import demazure_product, inversions
from grothperm.pipedream import PipeDream, permutation_of, q_reduce, reduce, word_of
from grothperm.streams import stream
from grothperm.tasep import run_with_exit_boundary, trajectory_csv

# A tiling of the order-6 staircase with nine crosses.
d = PipeDream.from_crosses(6, FIG1_CROSSES)
print(d.to_text())

# Reduction demotes the crosses where two pipes meet for the second time.
reduced, trace = reduce(d)
w = permutation_of(d)
print("reduced permutation:", w, "with", reduced.num_crosses, "crosses =", inversions(w), "inversions")
print("demoted boxes:", sorted(trace.demoted))

# Keeping every cross (q = 1) gives a different permutation.
print("non-reduced permutation:", q_reduce(d, 1.0))

# The same permutation from the 0-Hecke product of the cross labels.
print("reading word:", word_of(d), "->", demazure_product(word_of(d), 6).inverse())
print("word (5,5,3,4,1,2,4,5,4) ->", demazure_product((5, 5, 3, 4, 1, 2, 4, 5, 4), 6))

# A bumpless pipe dream: pipes 2 and 5 meet twice, the second meeting bounces.
b = BumplessPipeDream.from_text(BPD_EXAMPLE)
print(b.to_text())
print("bumpless permutation:", bpd_permutation(b), "bounced pairs:", repeated_crossings(b))

# Three particles, wall at n+1-t; the drawn jumps and seed 380 agree.
rec = run_with_exit_boundary(3, 6, 0.5, jumps=TASEP_JUMPS)
print(trajectory_csv(rec))
print("exit times:", rec.exit_times,
      "seeded run identical:", rec == run_with_exit_boundary(3, 6, 0.5, stream(380, 0)))
