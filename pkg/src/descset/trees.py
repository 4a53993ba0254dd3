"""Finite trees on ω^<ω and on pairs of sequences.

Covers canonical ranks, tree embeddings, the ⊕ pairing of two trees, the
Mansfield derivative with its perfect skeleton, scale tuples, trees of
partial rank functions and the normal-form tree of a point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, Optional

from .errors import InsufficientDepthError, ValidationError
from .ordinals import MINUS_ONE, OrdinalNotation, ord_rank_sup, rank_key
from .seqs import Point, Seq, as_seq, canonical_listing, comparable, is_proper_prefix, shortlex

__all__ = [
    "FinTree",
    "PairTree",
    "NormalForm",
    "rank",
    "root_rank",
    "height",
    "embeds",
    "oplus",
    "mansfield_derivative",
    "mansfield_kernel",
    "perfect_skeleton",
    "scale_tuple",
    "scale_cmp",
    "partial_rank_tree",
    "partial_rank_min_bound",
    "normal_form_tree",
]


def _children_map(nodes: Iterable, parent_of: Callable) -> dict:
    kids: dict = {n: [] for n in nodes}
    for n in kids:
        p = parent_of(n)
        if p is not None:
            kids[p].append(n)
    return kids


def _rank_bottom_up(nodes, kids, length) -> dict:
    r: dict = {}
    for n in sorted(nodes, key=length, reverse=True):
        r[n] = ord_rank_sup(r[c] for c in kids[n])
    return r


@dataclass(frozen=True)
class FinTree:
    """A finite tree: nonempty prefix-closed set of finite sequences."""

    nodes: frozenset

    def __post_init__(self):
        nodes = frozenset(as_seq(s) for s in self.nodes)
        if () not in nodes:
            raise ValidationError("tree must contain the empty sequence")
        for s in nodes:
            if s and s[:-1] not in nodes:
                raise ValidationError(f"not prefix-closed: {s} present but {s[:-1]} missing")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def of(cls, *nodes) -> "FinTree":
        return cls(frozenset(tuple(n) for n in nodes) | {()})

    @classmethod
    def chain(cls, length: int) -> "FinTree":
        """The 0-chain ⟨⟩ ⊂ ⟨0⟩ ⊂ … of the given length."""
        return cls(frozenset((0,) * i for i in range(length + 1)))

    @classmethod
    def full(cls, branching: int, depth: int) -> "FinTree":
        from .seqs import sequences_upto

        return cls(frozenset(sequences_upto(branching, depth)))

    def __contains__(self, s) -> bool:
        return tuple(s) in self.nodes

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes, key=shortlex))

    def children(self, s: Seq) -> list:
        return sorted(c for c in self.nodes if len(c) == len(s) + 1 and c[:-1] == s)

    def children_map(self) -> dict:
        kids = _children_map(self.nodes, lambda s: s[:-1] if s else None)
        for v in kids.values():
            v.sort()
        return kids

    def subtree(self, s: Seq) -> "FinTree":
        """T_s = {t : s⌢t ∈ T}."""
        s = tuple(s)
        if s not in self.nodes:
            raise ValidationError(f"{s} is not a node")
        k = len(s)
        return FinTree(frozenset(t[k:] for t in self.nodes if t[:k] == s))

    def to_json(self) -> list:
        return [list(s) for s in self]


def rank(tree: FinTree) -> Dict[Seq, OrdinalNotation]:
    """Canonical rank: r(s) = sup{r(s⌢n) + 1}; terminal nodes get 0."""
    if not isinstance(tree, FinTree):
        tree = FinTree(frozenset(tuple(s) for s in tree))
    return _rank_bottom_up(tree.nodes, tree.children_map(), len)


def root_rank(tree: FinTree) -> OrdinalNotation:
    return rank(tree)[()]


def height(tree: FinTree) -> int:
    """Longest root-to-leaf path, computed by depth-first search."""
    kids = tree.children_map()
    best = 0
    stack = [((), 0)]
    while stack:
        s, d = stack.pop()
        best = max(best, d)
        stack.extend((c, d + 1) for c in kids[s])
    return best


# -- embeddings -----------------------------------------------------------


def embeds(tree: FinTree, target: FinTree, strict: bool = False):
    """Decide T ⪯ T̂ (or T ≺ T̂ when ``strict``) and return a witness map.

    An embedding sends proper prefixes to proper prefixes.  The search maps
    each child of a node to the least child of the image that can still
    host it; this is exhaustive because hosting is monotone along a branch.
    """
    kids = tree.children_map()
    tkids = target.children_map()

    @lru_cache(maxsize=None)
    def can(s: Seq, u: Seq) -> bool:
        return all(any(can(c, v) for v in tkids[u]) for c in kids[s])

    try:
        if strict:
            start = next((u for u in sorted(target.nodes, key=shortlex) if u and can((), u)), None)
        else:
            start = () if can((), ()) else None
        if start is None:
            return False, None
        sigma = {(): start}
        stack = [()]
        while stack:
            s = stack.pop()
            for c in kids[s]:
                sigma[c] = next(v for v in tkids[sigma[s]] if can(c, v))
                stack.append(c)
        return True, sigma
    finally:
        can.cache_clear()


def is_embedding(tree: FinTree, target: FinTree, sigma: dict, strict: bool = False) -> bool:
    """Check s ⊂ t ⇒ σ(s) ⊂ σ(t) on every node pair."""
    if set(sigma) != set(tree.nodes) or not all(v in target.nodes for v in sigma.values()):
        return False
    if strict and sigma[()] == ():
        return False
    nodes = list(tree.nodes)
    return all(
        is_proper_prefix(sigma[s], sigma[t]) for s in nodes for t in nodes if is_proper_prefix(s, t)
    )


# -- pair trees -------------------------------------------------------------


@dataclass(frozen=True)
class PairTree:
    """Tree of pairs (r, s) of equal-length sequences.

    ``frontier_depth`` marks nodes of that length as assumed extendable: the
    derivative treats them as having two incompatible extensions.
    """

    nodes: frozenset
    frontier_depth: Optional[int] = None

    def __post_init__(self):
        nodes = set()
        for pair in self.nodes:
            try:
                r, s = pair
            except (TypeError, ValueError):
                raise ValidationError(f"not a pair: {pair!r}") from None
            r, s = as_seq(r), as_seq(s)
            if len(r) != len(s):
                raise ValidationError(f"coordinates of {pair!r} differ in length")
            nodes.add((r, s))
        nodes = frozenset(nodes)
        if nodes and ((), ()) not in nodes:
            raise ValidationError("nonempty pair tree must contain the root")
        for r, s in nodes:
            if r and (r[:-1], s[:-1]) not in nodes:
                raise ValidationError(f"not prefix-closed at {(r, s)}")
        fd = self.frontier_depth
        if fd is not None:
            if isinstance(fd, bool) or not isinstance(fd, int) or fd < 0:
                raise ValidationError("frontier_depth must be a natural")
            if any(len(r) > fd for r, _ in nodes):
                raise ValidationError("node deeper than frontier_depth")
        object.__setattr__(self, "nodes", nodes)

    @classmethod
    def of(cls, pairs, frontier_depth=None) -> "PairTree":
        return cls(frozenset((tuple(a), tuple(b)) for a, b in pairs), frontier_depth)

    def __contains__(self, pair):
        return (tuple(pair[0]), tuple(pair[1])) in self.nodes

    def __len__(self):
        return len(self.nodes)

    def __iter__(self):
        return iter(sorted(self.nodes, key=_pair_key))

    @property
    def depth(self) -> int:
        return max((len(r) for r, _ in self.nodes), default=0)

    def children_map(self) -> dict:
        kids = _children_map(self.nodes, lambda n: (n[0][:-1], n[1][:-1]) if n[0] else None)
        for v in kids.values():
            v.sort(key=_pair_key)
        return kids

    def rank(self) -> dict:
        return _rank_bottom_up(self.nodes, self.children_map(), lambda n: len(n[0]))

    def root_rank(self) -> OrdinalNotation:
        if not self.nodes:
            raise ValidationError("empty pair tree has no root")
        return self.rank()[((), ())]

    def to_json(self) -> dict:
        out = {"nodes": [[list(r), list(s)] for r, s in self]}
        if self.frontier_depth is not None:
            out["frontier_depth"] = self.frontier_depth
        return out


def _pair_key(n):
    return (len(n[0]), n[0], n[1])


def oplus(t0: FinTree, t1: FinTree) -> PairTree:
    """T0 ⊕ T1 = {(s, t) : s ∈ T0, t ∈ T1, |s| = |t|}."""
    by_len: dict = {}
    for t in t1.nodes:
        by_len.setdefault(len(t), []).append(t)
    return PairTree(frozenset((s, t) for s in t0.nodes for t in by_len.get(len(s), ())))


# -- Mansfield derivative --------------------------------------------------


def _splits(tree: PairTree) -> set:
    """Nodes having two extensions (possibly themselves) with incompatible s-parts.

    The s-parts of all extensions of a node fail to be pairwise compatible
    exactly when they do not all lie on one branch, i.e. when some of them
    is not a prefix of the longest one.
    """
    kids = tree.children_map()
    fd = tree.frontier_depth
    out = set()
    # s-parts of the extensions of n, summarized as (longest, is_chain)
    summary: dict = {}
    for n in sorted(tree.nodes, key=lambda n: len(n[0]), reverse=True):
        longest, chain = n[1], True
        for c in kids[n]:
            cl, cc = summary[c]
            if not cc:
                chain = False
            elif comparable(cl, longest):
                if len(cl) > len(longest):
                    longest = cl
            else:
                chain = False
        summary[n] = (longest, chain)
        if not chain or (fd is not None and len(n[0]) == fd):
            out.add(n)
    return out


def mansfield_derivative(tree: PairTree) -> PairTree:
    """One derivative step: keep nodes all of whose prefixes split."""
    split = _splits(tree)
    keep = set()
    for n in sorted(split, key=lambda n: len(n[0])):
        r, s = n
        if not r or (r[:-1], s[:-1]) in keep:
            keep.add(n)
    return PairTree(frozenset(keep), tree.frontier_depth)


def mansfield_kernel(tree: PairTree):
    """Iterate the derivative to its fixpoint.

    Returns ``(kernel, steps)`` where ``steps`` is the least α ≥ 1 with
    T_α = T_{α+1}.
    """
    current, k = tree, 0
    while True:
        nxt = mansfield_derivative(current)
        if nxt.nodes == current.nodes:
            return current, max(k, 1)
        current, k = nxt, k + 1


def perfect_skeleton(kernel: PairTree, k: int) -> dict:
    """Assign to each σ ∈ 2^{≤k} a node (r_σ, s_σ) of the kernel.

    σ⌢0 and σ⌢1 get the least pair (in (length, r, s) order) of extensions
    of σ's node whose second coordinates are incompatible.
    """
    root = ((), ())
    if root not in kernel.nodes:
        raise InsufficientDepthError("kernel is empty; cannot place the root")
    ext: dict = {}
    ordered = sorted(kernel.nodes, key=_pair_key)

    def extensions(n):
        if n not in ext:
            r, s = n
            ext[n] = [m for m in ordered if m[0][: len(r)] == r and m[1][: len(s)] == s]
        return ext[n]

    sigma = {(): root}
    frontier = [()]
    for level in range(k):
        nxt = []
        for tau in frontier:
            pair = _least_split(extensions(sigma[tau]))
            if pair is None:
                raise InsufficientDepthError(
                    f"node {sigma[tau]} for {tau} has no incompatible extensions (level {level})"
                )
            sigma[tau + (0,)], sigma[tau + (1,)] = pair
            nxt += [tau + (0,), tau + (1,)]
        frontier = nxt
    return sigma


def _least_split(exts):
    for a in exts:
        for b in exts:
            if not comparable(a[1], b[1]):
                return a, b
    return None


# -- scales ---------------------------------------------------------------


def scale_tuple(tree: FinTree, x: Point, n: int) -> tuple:
    """ψ_n(x) = ⟨r(s_0), x(0), …, r(s_n), x(n)⟩ with r = -1 off the tree."""
    r = rank(tree)
    out = []
    for i, s in enumerate(canonical_listing(n + 1)):
        out += [r.get(s, MINUS_ONE), x[i]]
    return tuple(out)


def scale_cmp(a: tuple, b: tuple) -> int:
    """Lexicographic comparison of two scale tuples (-1, 0, 1)."""
    for i, (u, v) in enumerate(zip(a, b)):
        ku, kv = (rank_key(u), rank_key(v)) if i % 2 == 0 else (u, v)
        if ku != kv:
            return -1 if ku < kv else 1
    return (len(a) > len(b)) - (len(a) < len(b))


# -- partial rank functions -------------------------------------------------


def _prank_constraints(tree: FinTree, count: int):
    listing = canonical_listing(count)
    inside = [i for i, s in enumerate(listing) if s in tree.nodes]
    greater = {m: [] for m in range(count)}  # n with s_n ⊂ s_m: r(n) > r(m)
    smaller = {m: [] for m in range(count)}  # n with s_m ⊂ s_n: r(n) < r(m)
    for m in inside:
        for n in inside:
            if n < m:
                if is_proper_prefix(listing[n], listing[m]):
                    greater[m].append(n)
                elif is_proper_prefix(listing[m], listing[n]):
                    smaller[m].append(n)
    return greater, smaller


def _prank_search(tree: FinTree, count: int, bound: int, first_only: bool):
    greater, smaller = _prank_constraints(tree, count)
    listing = canonical_listing(count)
    out = []
    current = []

    def go(m):
        if m == count:
            out.append(tuple(current))
            return first_only
        hi = min((current[n] for n in greater[m]), default=bound + 1) - 1
        lo = max((current[n] for n in smaller[m]), default=-1) + 1
        top = min(hi, bound)
        if first_only and listing[m] not in tree.nodes:
            top = lo  # unconstrained slot: any value will do for existence
        for v in range(lo, top + 1):
            current.append(v)
            stop = go(m + 1)
            current.pop()
            if stop:
                return True
        return False

    go(0)
    return out


def partial_rank_tree(tree: FinTree, count: int, bound: int) -> list:
    """All r : {0..N-1} → {0..B} with r(n) > r(m) whenever s_n ⊂ s_m in T.

    Solutions are returned as tuples in lexicographic order.
    """
    return _prank_search(tree, count, bound, first_only=False)


def partial_rank_min_bound(tree: FinTree, count: int) -> int:
    """Least B for which a partial rank function into {0..B} exists."""
    bound = 0
    while not _prank_search(tree, count, bound, first_only=True):
        bound += 1
    return bound


# -- normal-form trees ------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """T_x together with a flag for points rejected at the root."""

    nodes: frozenset = field(default_factory=frozenset)
    rejected: bool = False

    @property
    def tree(self) -> Optional[FinTree]:
        return None if self.rejected else FinTree(self.nodes)


def normal_form_tree(table: Iterable, x: Point, depth: int) -> NormalForm:
    """T_x = {s : |s| ≤ d and (x↾i, s↾i) ∈ R for every i ≤ |s|}."""
    allowed: dict = {}
    for a, b in table:
        a, b = as_seq(a), as_seq(b)
        if len(a) != len(b):
            raise ValidationError(f"table entry {(a, b)} has unequal lengths")
        allowed.setdefault(a, set()).add(b)
    if () not in allowed.get((), ()):
        return NormalForm(frozenset(), True)
    nodes = {()}
    for i in range(1, depth + 1):
        cands = allowed.get(x.restrict(i), ())
        nodes.update([s for s in cands if s[:-1] in nodes])
    return NormalForm(frozenset(nodes), False)


def naturals_rank(tree: FinTree) -> Dict[Seq, int]:
    """Ranks as plain ints (finite trees only have finite ranks)."""
    return {s: r.to_int() for s, r in rank(tree).items()}


def as_tree(nodes) -> FinTree:
    return nodes if isinstance(nodes, FinTree) else FinTree(frozenset(tuple(s) for s in nodes))

