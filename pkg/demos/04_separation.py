"""
Separating two Souslin schemes
==============================

Two schemes whose product tree dies out have disjoint projections, and
the Kleene construction turns the dead product tree into a Borel code
containing one projection and missing the other.
"""

import random

from descset.codes import eval_code
from descset.generate import random_disjoint_schemes
from descset.seqs import Point
from descset.separation import kleene_separate, product_tree, restrict

rng = random.Random(11)
A, B = random_disjoint_schemes(rng, depth=3, branching=2, branches=3)
print("scheme A:", sorted(A.nodes, key=lambda n: (len(n[0]), n))[:6], "...")

tri, alive = product_tree(A, B)
print("product tree has", len(tri), "nodes and dies after depth", alive)

sep = kleene_separate(A, B, depth=3, branching=2)
print("separator code:", len(sep.code.tree), "nodes")
print("A witnesses:", sep.witnesses_a)
print("B witnesses:", sep.witnesses_b)
for t in sep.witnesses_a + sep.witnesses_b:
    print(t, "->", eval_code(sep.code, Point(t, 0)))
print(sep.audit())

# sections: keep the nodes compatible with a fixed pair of prefixes
print("A restricted to s=<0>:", len(restrict(A, (0,), ())), "of", len(A), "nodes")
