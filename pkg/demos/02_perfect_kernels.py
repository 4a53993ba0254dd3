"""
Perfect kernels and fusion
==========================

Iterating the Mansfield derivative on pair trees, reading off a perfect
skeleton from the kernel, then fusing a chain of shrinking binary trees.
"""

import random

from descset.generate import full_pair_tree, random_binary_kernel_tree
from descset.perfect import BinTreeTrunc, fuse, leq_n
from descset.seqs import comparable
from descset.trees import PairTree, mansfield_kernel, perfect_skeleton

# a single branch never splits, so the derivative removes everything
branch = PairTree.of([((0,) * i, (0,) * i) for i in range(4)], frontier_depth=3)
kernel, steps = mansfield_kernel(branch)
print("single branch kernel:", sorted(kernel.nodes), "after", steps, "step(s)")

# the full binary tree is already perfect
full = full_pair_tree(2, 2)
kernel, steps = mansfield_kernel(full)
print("full binary kernel keeps", len(kernel), "of", len(full), "nodes; steps =", steps)
print("skeleton at depth 1:", perfect_skeleton(kernel, 1))

# a random tree: the skeleton's leaves have pairwise incompatible second coordinates
rng = random.Random(3)
tree = random_binary_kernel_tree(rng, 5)
kernel, steps = mansfield_kernel(tree)
sk = perfect_skeleton(kernel, 2)
leaves = [sk[s][1] for s in sk if len(s) == 2]
print("depth-2 skeleton leaves:", leaves)
assert all(not comparable(a, b) for i, a in enumerate(leaves) for b in leaves[i + 1:])

# fusion: each tree keeps the first splitting nodes of its predecessor
T0 = BinTreeTrunc.full(3)
T1 = BinTreeTrunc(frozenset(s for s in T0.nodes if s[:3] != (1, 1, 1)), 3)
T2 = BinTreeTrunc(frozenset(s for s in T1.nodes if s[:3] != (0, 0, 0)), 3)
print("T1 <=_1 T0:", leq_n(T1, T0, 1), " T2 <=_2 T1:", leq_n(T2, T1, 2))
fused = fuse([T0, T1, T2])
print("fusion has", len(fused.nodes), "nodes")
