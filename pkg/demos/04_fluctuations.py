"""Height fluctuations in the curved zone against Tracy-Widom.

The standardized statistic (H - n h) v / n^{1/3} has the right spread
already at moderate n, while its mean creeps toward the TW mean slowly."""
from grothperm.acceptance import fluctuation_samples
from grothperm.permuton import fluct_constant
from grothperm.tracy_widom import tw2_cdf, tw2_moments

mean, sd = tw2_moments()
print(f"TW2 mean {mean:.6f}, sd {sd:.6f}, F2(0) = {tw2_cdf(0.0):.10f}")
print(f"v(1/2,1/2) at p=1/2: {fluct_constant(0.5, 0.5, 0.5):.5f}")
for n in (250, 1000, 4000):
    z = fluctuation_samples(n, 0.5, 0.5, 0.5, 100, seed=5)
    print(f"n={n:5d}: mean {z.mean():+.3f}, sd {z.std(ddof=1):.3f}")
