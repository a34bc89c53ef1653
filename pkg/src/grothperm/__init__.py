"""Grothendieck random permutations: pipe dreams, vertex models, TASEP,
limit shapes, exact specializations and bumpless pipe dreams."""
from .perm_core import Permutation, demazure_product, height, inversions, layered, w0_block
from .pipedream import PipeDream, exact_distribution, permutation_of, q_reduce, sample, sample_permutation
from .streams import stream

__all__ = [
    "Permutation", "PipeDream", "demazure_product", "exact_distribution", "height",
    "inversions", "layered", "permutation_of", "q_reduce", "sample", "sample_permutation",
    "stream", "w0_block",
]
__version__ = "0.1.0"
