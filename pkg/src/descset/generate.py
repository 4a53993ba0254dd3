"""Enumerators and seeded random generators for the structures in this package."""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, List

from .seqs import sequences_upto
from .trees import FinTree, PairTree


def random_tree(rng: random.Random, max_nodes: int, branching: int = 3) -> FinTree:
    """Grow a tree by attaching new children to random existing nodes."""
    target = rng.randint(1, max_nodes)
    nodes = [()]
    count = {(): 0}
    while len(nodes) < target:
        parent = rng.choice(nodes)
        if count[parent] >= branching:
            continue
        child = parent + (count[parent],)
        count[parent] += 1
        count[child] = 0
        nodes.append(child)
    return FinTree(frozenset(nodes))


@lru_cache(maxsize=None)
def _forests(n: int) -> tuple:
    """All ordered forests with n nodes, each a tuple of child-forests."""
    if n == 0:
        return ((),)
    out = []
    for first in range(1, n + 1):
        # first tree has `first` nodes: a root over a forest of first-1
        for sub in _forests(first - 1):
            for rest in _forests(n - first):
                out.append((sub,) + rest)
    return tuple(out)


def _forest_nodes(forest, prefix=()):
    for i, sub in enumerate(forest):
        node = prefix + (i,)
        yield node
        yield from _forest_nodes(sub, node)


def all_trees(max_nodes: int) -> Iterator[FinTree]:
    """Every ordered tree with at most ``max_nodes`` nodes, children labeled 0,1,…"""
    for n in range(1, max_nodes + 1):
        for forest in _forests(n - 1):
            yield FinTree(frozenset([()] + list(_forest_nodes(forest))))


def random_pair_tree(rng: random.Random, depth: int, branching: int, density: float = 0.5,
                     frontier: bool = False) -> PairTree:
    """Random pair tree; each possible child survives with probability ``density``."""
    nodes = {((), ())}
    layer = [((), ())]
    for _ in range(depth):
        nxt = []
        for u, t in layer:
            for a in range(branching):
                for b in range(branching):
                    if rng.random() < density:
                        nxt.append((u + (a,), t + (b,)))
        nodes.update(nxt)
        layer = nxt
    return PairTree(frozenset(nodes), depth if frontier else None)


def random_scheme(rng: random.Random, depth: int, branching: int, branches: int) -> PairTree:
    """Pair tree generated by a few random full-depth branches plus their prefixes."""
    nodes = {((), ())}
    for _ in range(branches):
        u = tuple(rng.randrange(branching) for _ in range(depth))
        t = tuple(rng.randrange(branching) for _ in range(depth))
        cut = rng.randint(0, depth)
        nodes.update((u[:i], t[:i]) for i in range(cut + 1))
    return PairTree(frozenset(nodes), None)


def random_disjoint_schemes(rng: random.Random, depth: int, branching: int,
                            branches: int = 4, attempts: int = 1000):
    """Two random schemes whose product tree dies before ``depth``."""
    from .separation import product_tree

    for _ in range(attempts):
        ta = random_scheme(rng, depth, branching, branches)
        tb = random_scheme(rng, depth, branching, branches)
        if product_tree(ta, tb)[1] < depth:
            return ta, tb
    raise RuntimeError("no disjoint pair found")


def full_pair_tree(branching: int, depth: int, frontier: bool = True) -> PairTree:
    """{(s, s) : s ∈ branching^{≤depth}}."""
    return PairTree(frozenset((s, s) for s in sequences_upto(branching, depth)),
                    depth if frontier else None)


def random_binary_kernel_tree(rng: random.Random, depth: int) -> PairTree:
    """Frontier-marked pair tree whose second coordinates form a random perfect binary tree."""
    from .perfect import BinTreeTrunc

    nodes = {()}
    layer = [()]
    for _ in range(depth):
        nxt = []
        for s in layer:
            kids = [s + (0,), s + (1,)] if rng.random() < 0.7 else [s + (rng.randrange(2),)]
            nxt += kids
        nodes.update(nxt)
        layer = nxt
    trunc = BinTreeTrunc(frozenset(nodes), depth)
    firsts = {(): ()}
    for s in sorted(trunc.nodes, key=len)[1:]:
        firsts[s] = firsts[s[:-1]] + (rng.randrange(2),)
    return PairTree(frozenset((firsts[s], s) for s in trunc.nodes), depth)


def random_subsets(rng: random.Random, universe: List, count: int) -> List[set]:
    return [{x for x in universe if rng.random() < 0.5} for _ in range(count)]


__all__ = [
    "random_tree",
    "all_trees",
    "random_pair_tree",
    "random_scheme",
    "random_disjoint_schemes",
    "full_pair_tree",
    "random_binary_kernel_tree",
    "random_subsets",
]
