"""Sample a large Grothendieck permutation, write its point cloud as a PGM
heatmap and compare averaged heights with the limit surface."""
import sys

import numpy as np

from grothperm.emit import pgm_text
from grothperm.perm_core import inversions
from grothperm.permuton import EmpiricalGrid, compare_height, gamma_p, near_ellipse_fraction
from grothperm.pipedream import sample_permutation
from grothperm.streams import stream

n, p, samples = 1000, 0.5, 20
grid = EmpiricalGrid(n, 50)
invs = []
for s in range(samples):
    w = sample_permutation(n, p, stream(2024, s))
    grid.add(w)
    invs.append(inversions(w))

dmax, dmean = compare_height(grid, p)
print(f"max |H/n - h| over the grid: {dmax:.4f} (mean {dmean:.5f})")
print(f"inversion density {np.mean(invs) / (n * (n - 1) / 2):.4f}, limit {gamma_p(p):.4f}")
print(f"points within 20/n of the ellipse: {near_ellipse_fraction(w, p, radius=20):.3f}")

out = sys.argv[1] if len(sys.argv) > 1 else "limit_shape.pgm"
with open(out, "w") as fh:
    fh.write(pgm_text(grid.counts[::-1], [f"n={n} p={p} samples={samples}"]))
print("heatmap written to", out)
