"""Pipe dreams, the colored vertex model and the TASEP give one height law.

At n = 4 all three are computed exactly; the TASEP side also matches the
Schur marginal of the displacement."""
from fractions import Fraction

from grothperm.perm_core import height
from grothperm.pipedream import exact_distribution
from grothperm.tasep import SchurSpec, exact_height_law, schur_marginal_lastpart
from grothperm.vertex_model import exact_colored_law

n, p = 4, Fraction(1, 2)
dreams = exact_distribution(n, p)
vertex = exact_colored_law(n, p)
print("dream law == vertex law:", dreams == vertex)

for x, y in [(2, 2), (3, 2), (2, 4)]:
    law = {}
    for w, q in dreams.items():
        law[height(w, x, y)] = law.get(height(w, x, y), 0) + q
    tasep = exact_height_law(n, x, y, p)
    print(f"H({x},{y}):", {h: str(q) for h, q in sorted(law.items())},
          "tasep agrees:", {h: q for h, q in tasep.items() if q} == law)

law = schur_marginal_lastpart(SchurSpec(2, 3, 0.5))
print("displacement law of particle 2 at time 3:",
      {k: round(v, 4) for k, v in law.items() if v > 1e-4})
