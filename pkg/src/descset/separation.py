"""Souslin schemes: sections, product trees, the Kleene separator and reduction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .codes import INTERSECTION, UNION, BorelCode, Cyl, EMPTY, eval_code
from .errors import ValidationError
from .seqs import Point, as_seq, comparable
from .trees import FinTree, PairTree, embeds

__all__ = [
    "TripleTree",
    "restrict",
    "product_tree",
    "projection_witnesses",
    "kleene_separate",
    "Separation",
    "reduce_pair",
    "reduction_conditions",
    "SIDE_A",
    "SIDE_B",
]

SIDE_A = "A"
SIDE_B = "B"


@dataclass(frozen=True)
class TripleTree:
    """Coordinatewise prefix-closed set of triples (u, v, t) of equal length."""

    nodes: frozenset

    def __post_init__(self):
        nodes = set()
        for tri in self.nodes:
            if len(tri) != 3:
                raise ValidationError(f"not a triple: {tri!r}")
            u, v, t = (as_seq(c) for c in tri)
            if not len(u) == len(v) == len(t):
                raise ValidationError(f"triple {tri!r} has unequal lengths")
            nodes.add((u, v, t))
        nodes = frozenset(nodes)
        if nodes and ((), (), ()) not in nodes:
            raise ValidationError("nonempty triple tree must contain the root")
        for u, v, t in nodes:
            if u and (u[:-1], v[:-1], t[:-1]) not in nodes:
                raise ValidationError(f"not prefix-closed at {(u, v, t)}")
        object.__setattr__(self, "nodes", nodes)

    def __contains__(self, tri):
        return tuple(tuple(c) for c in tri) in self.nodes

    def __len__(self):
        return len(self.nodes)

    @property
    def depth(self) -> int:
        """Greatest node length, or -1 for the empty tree."""
        return max((len(u) for u, _, _ in self.nodes), default=-1)

    def to_json(self) -> list:
        key = lambda n: (len(n[0]), n)  # noqa: E731
        return [[list(c) for c in n] for n in sorted(self.nodes, key=key)]


def restrict(tree: PairTree, s, t) -> PairTree:
    """T^{s,t}: nodes whose coordinates are comparable with s and t."""
    s, t = as_seq(s), as_seq(t)
    keep = frozenset(n for n in tree.nodes if comparable(n[0], s) and comparable(n[1], t))
    return PairTree(keep, tree.frontier_depth)


def product_tree(ta: PairTree, tb: PairTree):
    """T = {(u, v, t) : (u, t) ∈ T_A and (v, t) ∈ T_B} and its alive depth."""
    by_t: dict = {}
    for v, t in tb.nodes:
        by_t.setdefault(t, []).append(v)
    nodes = frozenset((u, v, t) for u, t in ta.nodes for v in by_t.get(t, ()))
    tri = TripleTree(nodes)
    return tri, tri.depth


def projection_witnesses(tree: PairTree, depth: int) -> list:
    """Second coordinates of length ``depth`` reached in the tree, sorted."""
    return sorted({t for _, t in tree.nodes if len(t) == depth})


def _branching(*trees: PairTree) -> int:
    top = max((x for tr in trees for n in tr.nodes for c in n for x in c), default=0)
    return max(2, top + 1)


@dataclass
class Separation:
    """Separator code and the bookkeeping needed to audit it."""

    code: BorelCode
    alive_depth: int
    depth: int
    branching: int
    witnesses_a: list
    witnesses_b: list
    node_of: dict  # triple of T⁺ -> path of its sub-code inside ``code``

    def to_json(self) -> dict:
        from .serialize import code_to_json

        return {
            "alive_depth": self.alive_depth,
            "code": code_to_json(self.code),
            "witnesses_a": [list(t) for t in self.witnesses_a],
            "witnesses_b": [list(t) for t in self.witnesses_b],
            "certificate": f"schemes share no branch through depth {self.depth}; "
                           "this says nothing about deeper levels",
        }

    def audit(self) -> dict:
        """Evaluate the code on every window extension of every witness."""
        tails = range(self.branching)
        miss_a = [t for t in self.witnesses_a
                  if not all(eval_code(self.code, Point(t, j)) for j in tails)]
        hit_b = [t for t in self.witnesses_b
                 if any(eval_code(self.code, Point(t, j)) for j in tails)]
        return {"missed_a": miss_a, "included_b": hit_b, "ok": not miss_a and not hit_b}


def kleene_separate(ta: PairTree, tb: PairTree, depth: Optional[int] = None,
                    branching: Optional[int] = None) -> Separation:
    """Separator for p[T_A] and p[T_B] built over the just-out tree T⁺.

    A terminal (u, v, t) of T⁺ gets ∅ when (u, t) ∉ T_A and [t] otherwise.
    An internal node gets ⋃_k ⋂_m ⋃_n of the sets at (u⌢n, v⌢m, t⌢k), with
    indices below ``branching``.  Requires the product tree to die out
    before ``depth``, the certificate that no t of that length is reached
    in both schemes.
    """
    if depth is None:
        fds = {tr.frontier_depth for tr in (ta, tb) if tr.frontier_depth is not None}
        depth = max(fds) if fds else max(ta.depth, tb.depth)
    b = branching if branching is not None else _branching(ta, tb)
    prod, alive = product_tree(ta, tb)
    if alive >= depth:
        raise ValidationError(
            f"product tree is alive at depth {alive} >= {depth}; projections not certified disjoint"
        )
    inside = prod.nodes

    nodes, kinds, leaves, node_of = set(), {}, {}, {}

    def build(tri, path):
        nodes.add(path)
        node_of[tri] = path
        u, v, t = tri
        if tri not in inside:
            leaves[path] = EMPTY if (u, t) not in ta.nodes else Cyl(t)
            return
        kinds[path] = UNION
        for k in range(b):
            pk = path + (k,)
            nodes.add(pk)
            kinds[pk] = INTERSECTION
            for m in range(b):
                pm = pk + (m,)
                nodes.add(pm)
                kinds[pm] = UNION
                for n in range(b):
                    build((u + (n,), v + (m,), t + (k,)), pm + (n,))

    build(((), (), ()), ())
    code = BorelCode(FinTree(frozenset(nodes)), kinds, leaves)
    return Separation(
        code=code,
        alive_depth=alive,
        depth=depth,
        branching=b,
        witnesses_a=projection_witnesses(ta, depth),
        witnesses_b=projection_witnesses(tb, depth),
        node_of=node_of,
    )


def reduction_conditions(ta: FinTree, tb: FinTree):
    """(not T_b ≺ T_a, not T_a ⪯ T_b): the side-A and side-B conditions."""
    side_a = not embeds(tb, ta, strict=True)[0]
    side_b = not embeds(ta, tb, strict=False)[0]
    return side_a, side_b


def reduce_pair(ta: FinTree, tb: FinTree) -> str:
    side_a, side_b = reduction_conditions(ta, tb)
    if side_a == side_b:
        raise ValidationError("reduction conditions do not select exactly one side")
    return SIDE_A if side_a else SIDE_B
