"""Rank functions on conditions and the p̂ constructions that bound them.

Both constructions first extend p to p₀ so that every limit node above β
leaves a copy of its commitment on a grandchild of rank ≤ β, then cut p₀
down to the part of rank ≤ β.  The grandchild is the least unused one.
"""

from __future__ import annotations

from ..errors import InsufficientDepthError, ValidationError
from ..ordinals import ONE, OrdinalNotation, as_ordinal
from .posets import AlphaCondition, AlphaPoset, PAlphaPoset, PCondition


def _beta(beta) -> OrdinalNotation:
    beta = as_ordinal(beta)
    if beta < ONE:
        raise ValidationError("β must be at least 1")
    return beta


def alpha_rank(poset: AlphaPoset, p: AlphaCondition, Q=()) -> OrdinalNotation:
    return poset.rank(p, Q)


def _grandchild_for(poset, s, n, used) -> tuple:
    """Least grandchild s⌢n⌢m free of every commitment listed in ``used``."""
    child = s + (n,)
    for m in range(poset.tree.branching):
        g = child + (m,)
        if g not in poset.tree.ranks:
            break
        if not any(u[: len(g)] == g for u in used):
            return g
    raise InsufficientDepthError(
        f"no free node s⌢n⌢m below {child} for the limit node {s}; truncation too shallow"
    )


def alpha_rank_hat(poset: AlphaPoset, p: AlphaCondition, beta, Q=()) -> AlphaCondition:
    """p̂ with rank(p̂, Q) ≤ β, compatible with p."""
    poset.check(p)
    beta = _beta(beta)
    Q = set(Q)
    r = poset.tree.ranks
    F = set(p.F)
    tnodes = {s for s, _ in p.t}
    for s, x in sorted(p.F, key=lambda sx: (len(sx[0]), sx[0], str(sx[1]))):
        lam = r[s]
        if not (lam.is_limit and lam > beta):
            continue
        for n in range(poset.tree.branching):
            child = s + (n,)
            if child not in r or r[child] > beta:
                continue
            if any(u[:-1] == child and y == x for u, y in F):
                continue
            used = tnodes | {u for u, _ in F}
            F.add((_grandchild_for(poset, s, n, used), x))
    kept = {(s, x) for s, x in F if x in Q or r[s] <= beta}
    return AlphaCondition(p.t, frozenset(kept))


def palpha_rank(poset: PAlphaPoset, p: PCondition) -> OrdinalNotation:
    return poset.rank(p)


def palpha_rank_hat(poset: PAlphaPoset, p: PCondition, beta) -> PCondition:
    """p̂ = p₀ restricted to nodes of rank ≤ β."""
    poset.check(p)
    beta = _beta(beta)
    r = poset.tree.ranks
    vals = dict(p.pairs)
    for s, v in sorted(p.pairs, key=lambda sv: (len(sv[0]), sv[0])):
        lam = r[s]
        if not (lam.is_limit and lam > beta):
            continue
        for n in range(poset.tree.branching):
            child = s + (n,)
            if child not in r or not r[child] < beta:
                continue
            if any(vals.get(child + (m,)) == v for m in range(poset.tree.branching)):
                continue
            g = _grandchild_for(poset, s, n, set(vals))
            vals[g] = v
    return PCondition(frozenset((s, v) for s, v in vals.items() if r[s] <= beta))
