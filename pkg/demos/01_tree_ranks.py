"""
Ranks of finite trees
=====================

Ranks, embeddings between trees, the pair tree of two trees, scale
tuples and the reduction rule that picks a side by comparing ranks.
"""

from descset.seqs import Point, canonical_listing
from descset.separation import reduce_pair
from descset.trees import FinTree, embeds, oplus, partial_rank_tree, rank, root_rank, scale_tuple

# a small tree: the root has two children, one of which continues
T = FinTree.of((0,), (1,), (0, 0))
for node, r in sorted(rank(T).items(), key=lambda kv: (len(kv[0]), kv[0])):
    print(f"rank{node} = {r}")

# on a finite tree the rank of the root is the length of the longest branch
for n in range(5):
    assert root_rank(FinTree.chain(n)).to_int() == n

# embeddings follow ranks: a chain of length 2 does not fit into a tree of height 1
shallow = FinTree.full(2, 1)
print("chain(2) embeds in full(2,1):", embeds(FinTree.chain(2), shallow)[0])
ok, sigma = embeds(FinTree.chain(1), FinTree.chain(2), strict=True)
print("strict embedding of chain(1) into chain(2):", sigma)

# the pair tree only survives as long as both trees do
print("rank of chain(2) (+) chain(3):", oplus(FinTree.chain(2), FinTree.chain(3)).root_rank())

# scale tuples interleave ranks of listed sequences with the values of x
print("first listed sequences:", canonical_listing(6))
print("psi_1(x) for T={<>,<0>}, x=(5,7,...):", scale_tuple(FinTree.of((0,)), Point((5, 7)), 1))

# partial rank functions on the first N listed sequences, values up to B
print("rank functions, N=2, B=1:", partial_rank_tree(FinTree.of((0,)), 2, 1))

# reduction: side A exactly when the first tree has rank at most the second
for a, b in [(1, 2), (2, 2), (3, 1)]:
    print(f"reduce(chain({a}), chain({b})) =", reduce_pair(FinTree.chain(a), FinTree.chain(b)))
