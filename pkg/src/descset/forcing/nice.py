"""Truncated nice α-trees: finite trees labeled with their intended ranks."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ValidationError
from ..ordinals import ZERO, OrdinalNotation, as_ordinal, nat
from ..seqs import shortlex
from ..trees import FinTree

TWO = nat(2)


@dataclass(frozen=True)
class NiceTree:
    """A nice α-tree cut at ``depth`` with branching capped at ``branching``.

    ``ranks`` holds the rank each node has in the untruncated tree.  Nodes
    at the cut keep their positive label even though their children are
    missing.
    """

    tree: FinTree
    ranks: dict
    alpha: OrdinalNotation
    branching: int
    depth: int

    def nodes(self) -> list:
        return sorted(self.tree.nodes, key=shortlex)

    def rank_zero(self) -> list:
        return [s for s in self.nodes() if self.ranks[s] == ZERO]

    def positive(self) -> list:
        return [s for s in self.nodes() if self.ranks[s] != ZERO]

    def problems(self) -> list:
        """Every violated clause of the definition, as text."""
        out = []
        r = self.ranks
        if set(r) != self.tree.nodes:
            return ["rank labels do not cover the tree"]
        if r[()] != self.alpha:
            out.append(f"root rank {r[()]} differs from {self.alpha}")
        for s in self.nodes():
            rho = r[s]
            kids = self.tree.children(s)
            if rho == ZERO:
                if kids:
                    out.append(f"rank-0 node {s} has children")
                continue
            if len(s) < self.depth and kids != [s + (n,) for n in range(self.branching)]:
                out.append(f"positive-rank node {s} lacks some child below the cut")
            if len(s) == self.depth and kids:
                out.append(f"node {s} at the cut has children")
            child_ranks = [r[c] for c in kids]
            if rho.is_successor:
                if any(c != rho.pred() for c in child_ranks):
                    out.append(f"successor node {s} has a child not of rank {rho.pred()}")
            else:
                if child_ranks and child_ranks[0] < TWO:
                    out.append(f"limit node {s} has first child of rank below 2")
                if any(a >= b for a, b in zip(child_ranks, child_ranks[1:])):
                    out.append(f"limit node {s} has child ranks that do not increase")
                if any(c >= rho for c in child_ranks):
                    out.append(f"limit node {s} has a child of rank ≥ {rho}")
        return out

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "branching": self.branching,
            "depth": self.depth,
            "nodes": [[list(s), self.ranks[s].to_json()] for s in self.nodes()],
        }


def limit_child_rank(lam: OrdinalNotation, n: int) -> OrdinalNotation:
    """Rank of the n-th child of a limit node: λ[n + 2], which is ≥ 2 and increases to λ."""
    return lam.fundamental(n + 2)


def nice_tree(alpha, branching: int = 2, depth: int = 3) -> NiceTree:
    alpha = as_ordinal(alpha)
    if alpha < TWO:
        raise ValidationError(f"nice trees need α ≥ 2, got {alpha}")
    if branching < 2:
        raise ValidationError("branching must be at least 2")
    ranks = {(): alpha}
    layer = [()]
    for _ in range(depth):
        nxt = []
        for s in layer:
            rho = ranks[s]
            if rho == ZERO:
                continue
            for n in range(branching):
                ranks[s + (n,)] = rho.pred() if rho.is_successor else limit_child_rank(rho, n)
                nxt.append(s + (n,))
        layer = nxt
    out = NiceTree(FinTree(frozenset(ranks)), ranks, alpha, branching, depth)
    bad = out.problems()
    if bad:  # pragma: no cover - construction invariant
        raise AssertionError(bad)
    return out


__all__ = ["NiceTree", "nice_tree", "limit_child_rank"]
