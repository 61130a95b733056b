"""Exact combinatorics of the circular Bruhat order CB(k, n).

Bounded affine permutations, the Hasse diagram of CB(k, n) with its cyclic
cover weights, polynomial-valued chain sums, and exhaustive checks of the
identities relating them to standard Young tableaux and the k-Bruhat order.
"""

from .affine import AffinePermutation, DecoratedPermutation, f_min, f_top, from_decorated, reflection_t
from .cbposet import CBPoset, build, covers_below, enumerate_cb, fiber_subposet
from .chains import delta, f_u, u_f, weighted_chain_sum
from .perms import Permutation
from .polyweights import MPoly, cover_weight
from .young import syt_count_hook

__version__ = "0.1.0"
