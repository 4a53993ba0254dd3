"""Truncated perfect binary trees: splitting nodes, the orders ≤_n and fusion."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InsufficientDepthError, ValidationError
from .seqs import Seq, as_seq, sequences_upto, shortlex

__all__ = ["BinTreeTrunc", "splitting_node", "splitting_nodes", "leq_n", "fuse"]


@dataclass(frozen=True)
class BinTreeTrunc:
    """A binary tree cut at ``depth`` in which every node reaches ``depth``."""

    nodes: frozenset
    depth: int

    def __post_init__(self):
        if isinstance(self.depth, bool) or not isinstance(self.depth, int) or self.depth < 0:
            raise ValidationError("depth must be a natural")
        nodes = frozenset(as_seq(s) for s in self.nodes)
        if () not in nodes:
            raise ValidationError("truncation must contain the root")
        for s in nodes:
            if any(v > 1 for v in s):
                raise ValidationError(f"{s} is not a binary sequence")
            if len(s) > self.depth:
                raise ValidationError(f"{s} is deeper than {self.depth}")
            if s and s[:-1] not in nodes:
                raise ValidationError(f"not prefix-closed at {s}")
            if len(s) < self.depth and s + (0,) not in nodes and s + (1,) not in nodes:
                raise ValidationError(f"{s} is maximal below depth {self.depth}")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def full(cls, depth: int) -> "BinTreeTrunc":
        return cls(frozenset(sequences_upto(2, depth)), depth)

    def __contains__(self, s):
        return tuple(s) in self.nodes

    def __iter__(self):
        return iter(sorted(self.nodes, key=shortlex))

    def is_splitting(self, s: Seq) -> bool:
        return s + (0,) in self.nodes and s + (1,) in self.nodes

    def to_json(self) -> dict:
        return {"nodes": [list(s) for s in self], "depth": self.depth}


def _next_split(tree: BinTreeTrunc, s: Seq) -> Optional[Seq]:
    """First splitting node extending s (s itself included), if any."""
    while s in tree.nodes:
        if tree.is_splitting(s):
            return s
        s = s + ((0,) if s + (0,) in tree.nodes else (1,))
        if len(s) > tree.depth:
            return None
    return None


def splitting_node(tree: BinTreeTrunc, sigma: Sequence[int]) -> Optional[Seq]:
    """The splitting node of T indexed by σ ∈ 2^{<ω}, or None if T is too shallow.

    ⟨⟩ indexes the first splitting node; σ⌢i indexes the first splitting node
    above the i-th child of σ's splitting node.
    """
    node = _next_split(tree, ())
    for i in sigma:
        if node is None:
            return None
        node = _next_split(tree, node + (i,))
    return node


def splitting_nodes(tree: BinTreeTrunc, n: int) -> dict:
    """σ ↦ splitting node for every σ with |σ| < n; raise if one is missing."""
    out = {}
    for sigma in sequences_upto(2, n - 1) if n > 0 else ():
        node = splitting_node(tree, sigma)
        if node is None:
            raise InsufficientDepthError(
                f"truncation of depth {tree.depth} has no splitting node for {sigma}"
            )
        out[sigma] = node
    return out


def leq_n(tree: BinTreeTrunc, other: BinTreeTrunc, n: int) -> bool:
    """T ≤_n T′: T ⊆ T′ and T keeps the first 2^{<n} splitting nodes of T′.

    A splitting node is kept when it and both of its children remain in T.
    """
    required = splitting_nodes(other, n)
    if not tree.nodes <= other.nodes:
        return False
    return all(tree.is_splitting(node) for node in required.values())


def fuse(chain: Sequence[BinTreeTrunc]) -> BinTreeTrunc:
    """Intersect a fusion sequence T_0 ≥_0 T_1 ≥_1 T_2 …, cut at the least depth."""
    if not chain:
        raise ValidationError("fusion needs a nonempty chain")
    for i in range(len(chain) - 1):
        try:
            ok = leq_n(chain[i + 1], chain[i], i)
        except InsufficientDepthError as exc:
            raise ValidationError(f"chain condition fails at index {i}: {exc}") from None
        if not ok:
            raise ValidationError(f"chain condition fails at index {i}: T_{i + 1} not ≤_{i} T_{i}")
    depth = min(t.depth for t in chain)
    common = frozenset.intersection(*(t.nodes for t in chain))
    common = frozenset(s for s in common if len(s) <= depth)
    # prune nodes with no extension to the common depth
    alive = {s for s in common if len(s) == depth}
    for d in range(depth - 1, -1, -1):
        alive |= {s for s in common if len(s) == d and (s + (0,) in alive or s + (1,) in alive)}
    if () not in alive:
        raise ValidationError("fusion of the chain is empty")
    return BinTreeTrunc(frozenset(alive), depth)
