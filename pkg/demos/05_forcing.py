"""
Generic filters over finite approximations
==========================================

A Rasiowa-Sikorski run meets a list of dense sets one after another.
Here it builds open sets U_0, U_1, ... whose intersection is a chosen
subset of a small space, then colors a nice tree, and finally shows the
condition p-hat that bounds the rank of a condition.
"""

from descset.forcing import (
    AlphaCondition,
    AlphaPoset,
    Atom,
    BigAndNeg,
    PAlphaPoset,
    PCondition,
    SilverPoset,
    Space,
    alpha_rank_hat,
    nice_tree,
    palpha_audit,
    palpha_dense,
    palpha_extract,
    palpha_rank_hat,
    pi_eval,
    rasiowa_sikorski,
    silver_extract,
    silver_target_specs,
    verify_transcript,
)
from descset.ordinals import OMEGA

space = Space(["a", "b", "c", "d"], [{"a"}, {"b"}, {"c"}, {"d"}, {"a", "b"}])
P = SilverPoset(space)
target = {"a", "c"}
run = rasiowa_sikorski(P, silver_target_specs(space, target, N=3))
for spec, cond in zip(run.specs, run.conditions[1:]):
    print(f"{str(spec):28s} {sorted(map(str, cond.sentences))}")
U, trace = silver_extract(P, run, 3)
print("U_n:", U, "trace:", trace, "replay problems:", verify_transcript(P, run))

# a nice omega-tree and a coloring where each node avoids its children's colors
tree = nice_tree(OMEGA, branching=3, depth=2)
print({s: str(r) for s, r in tree.ranks.items() if len(s) <= 1})
Q = PAlphaPoset(tree, values=3)
specs = [palpha_dense("D_s", ())] + [palpha_dense("E_s", (), k, 3) for k in range(3)]
specs += [palpha_dense("D_s", (n,)) for n in range(3)]
colored = rasiowa_sikorski(Q, specs)
print("coloring:", palpha_extract(colored), "audit:", palpha_audit(Q, colored, 3))

# p-hat: a root commitment survives as a copy on a low grandchild
deep = PAlphaPoset(nice_tree(OMEGA, 2, 3), 3)
print(sorted(palpha_rank_hat(deep, PCondition({((), 0)}), 3).pairs))
R = AlphaPoset(nice_tree(OMEGA, 2, 3), Space.singletons(["x", "y"]))
print(sorted(alpha_rank_hat(R, AlphaCondition(F={((), "x")}), 3).F))

# Pi sentences: a big conjunction of negations
theta = BigAndNeg((Atom(0), BigAndNeg((Atom(1),))))
print("Y={1}:", pi_eval(theta, {1}), " Y={0}:", pi_eval(theta, {0}))
