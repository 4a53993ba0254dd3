"""Forcing posets with finite conditions.

Each poset object knows its ambient data (a labeled point space, a nice
tree, a binary truncation) and offers ``top``, ``is_valid``, ``leq``,
``join`` and ``compatible``.  Conditions are immutable and carry the tag of
the poset they belong to, so mixing posets is caught early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence

from ..errors import ValidationError
from ..ordinals import ZERO, OrdinalNotation
from ..perfect import BinTreeTrunc
from ..seqs import shortlex

SILVER, FIN, ALPHA, PALPHA, SUBTREE = "silver", "fin", "alpha", "palpha", "subtree"


# -- labeled spaces ------------------------------------------------------


class Space:
    """Finite set of labeled points with a basis given by a membership table."""

    def __init__(self, points: Sequence[Hashable], basis: Sequence[Iterable[Hashable]]):
        self.points = list(points)
        if len(set(self.points)) != len(self.points):
            raise ValidationError("duplicate point ids")
        known = self._known = set(self.points)
        self.basis = []
        for i, b in enumerate(basis):
            b = frozenset(b)
            if not b <= known:
                raise ValidationError(f"basic set {i} mentions unknown points")
            self.basis.append(b)

    def __contains__(self, x):
        return x in self._known

    def member(self, x, b: int) -> bool:
        return x in self.basis[b]

    def separating(self, x, avoid) -> list:
        """Indices of basic sets containing x and missing every point of ``avoid``."""
        avoid = set(avoid)
        return [i for i, b in enumerate(self.basis) if x in b and not (b & avoid)]

    def is_hausdorff(self) -> bool:
        """Every point can be put in a basic set avoiding any other single point."""
        return all(self.separating(x, {y}) for x in self.points for y in self.points if x != y)

    def to_json(self) -> dict:
        return {"points": self.points, "basis": [sorted(b, key=str) for b in self.basis]}

    @classmethod
    def singletons(cls, points) -> "Space":
        points = list(points)
        return cls(points, [{x} for x in points])


# -- conditions -------------------------------------------------------------


@dataclass(frozen=True)
class Sentence:
    """One Silver sentence.

    kind 0: "B ⊆ U_n" (``b`` and ``n`` set);
    kind 1: "x ∉ U_n" (``x`` and ``n`` set);
    kind 2: "x ∈ ⋂ U_n" (``x`` set).
    """

    kind: int
    b: int = -1
    x: Optional[Hashable] = None
    n: int = -1

    def sort_key(self):
        return (self.kind, str(self.x), self.n, self.b)

    def __str__(self):
        if self.kind == 0:
            return f"B{self.b}⊆U{self.n}"
        if self.kind == 1:
            return f"{self.x}∉U{self.n}"
        return f"{self.x}∈⋂U"


def BSubU(b: int, n: int) -> Sentence:
    return Sentence(0, b=b, n=n)


def XNotinU(x, n: int) -> Sentence:
    return Sentence(1, x=x, n=n)


def XinAll(x) -> Sentence:
    return Sentence(2, x=x)


@dataclass(frozen=True)
class SilverCondition:
    sentences: frozenset = frozenset()
    tag = SILVER

    def __post_init__(self):
        object.__setattr__(self, "sentences", frozenset(self.sentences))

    def __len__(self):
        return len(self.sentences)

    def ordered(self):
        return sorted(self.sentences, key=Sentence.sort_key)


@dataclass(frozen=True)
class FinCondition:
    """Finite partial function into {0, 1}, stored as a set of pairs."""

    pairs: frozenset = frozenset()
    tag = FIN

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    def __len__(self):
        return len(self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)


@dataclass(frozen=True)
class AlphaCondition:
    """(t, F): t assigns basis indices to rank-0 nodes, F pairs positive-rank nodes with points."""

    t: frozenset = frozenset()
    F: frozenset = frozenset()
    tag = ALPHA

    def __post_init__(self):
        object.__setattr__(self, "t", frozenset((tuple(s), b) for s, b in self.t))
        object.__setattr__(self, "F", frozenset((tuple(s), x) for s, x in self.F))

    def __len__(self):
        return len(self.t) + len(self.F)

    def t_map(self) -> dict:
        return dict(self.t)


@dataclass(frozen=True)
class PCondition:
    """Finite partial map from tree nodes to naturals."""

    pairs: frozenset = frozenset()
    tag = PALPHA

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((tuple(s), v) for s, v in self.pairs))

    def __len__(self):
        return len(self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)


@dataclass(frozen=True)
class SubtreeCondition:
    nodes: frozenset = frozenset({()})
    tag = SUBTREE

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(tuple(s) for s in self.nodes))

    def __len__(self):
        return len(self.nodes)

    def terminals(self) -> list:
        kids = {s[:-1] for s in self.nodes if s}
        return sorted((s for s in self.nodes if s not in kids), key=shortlex)


def _is_function(pairs) -> bool:
    keys = [k for k, _ in pairs]
    return len(keys) == len(set(keys))


# -- posets -----------------------------------------------------------------


class Poset:
    tag = ""

    def top(self):
        raise NotImplementedError

    def problems(self, p) -> list:
        """Human-readable reasons p is not a condition (empty when valid)."""
        raise NotImplementedError

    def is_valid(self, p) -> bool:
        return not self.problems(p)

    def join(self, p, q):
        raise NotImplementedError

    def leq(self, p, q) -> bool:
        """p ≤ q: p is stronger."""
        raise NotImplementedError

    def check(self, *conds):
        for c in conds:
            if getattr(c, "tag", None) != self.tag:
                raise ValidationError(f"condition {c!r} does not belong to the {self.tag} poset")

    def compatible(self, p, q) -> bool:
        self.check(p, q)
        j = self.join(p, q)
        return j is not None and self.is_valid(j)


class SilverPoset(Poset):
    tag = SILVER

    def __init__(self, space: Space):
        self.space = space

    def top(self):
        return SilverCondition()

    def problems(self, p: SilverCondition) -> list:
        self.check(p)
        out = []
        excluded = {}
        covered = {}
        for s in p.sentences:
            if s.kind == 0:
                if not 0 <= s.b < len(self.space.basis) or s.n < 0:
                    out.append(f"bad sentence {s}")
                else:
                    covered.setdefault(s.n, []).append(s.b)
            elif s.kind in (1, 2):
                if s.x not in self.space:
                    out.append(f"unknown point in {s}")
                if s.kind == 1:
                    excluded.setdefault(s.n, []).append(s.x)
            else:
                out.append(f"unknown sentence kind {s.kind}")
        everywhere = {s.x for s in p.sentences if s.kind == 2}
        for n, xs in excluded.items():
            for x in xs:
                for b in covered.get(n, ()):
                    if self.space.member(x, b):
                        out.append(f"{x}∉U{n} clashes with B{b}⊆U{n}")
                if x in everywhere:
                    out.append(f"{x}∉U{n} clashes with {x}∈⋂U")
        return out

    def join(self, p, q):
        return SilverCondition(p.sentences | q.sentences)

    def leq(self, p, q) -> bool:
        self.check(p, q)
        return p.sentences >= q.sentences


class FinPoset(Poset):
    """FIN(κ, 2): finite partial functions from κ into 2."""

    tag = FIN

    def __init__(self, size: Optional[int] = None):
        self.size = size

    def top(self):
        return FinCondition()

    def problems(self, p: FinCondition) -> list:
        self.check(p)
        out = []
        if not _is_function(p.pairs):
            out.append("assignment is not a function")
        for i, v in p.pairs:
            if v not in (0, 1):
                out.append(f"value {v!r} at {i} is not 0 or 1")
            if self.size is not None and not (isinstance(i, int) and 0 <= i < self.size):
                out.append(f"index {i!r} outside the declared range")
        return out

    def join(self, p, q):
        return FinCondition(p.pairs | q.pairs)

    def leq(self, p, q) -> bool:
        self.check(p, q)
        return p.pairs >= q.pairs


class AlphaPoset(Poset):
    """α-forcing over a nice tree and a labeled space."""

    tag = ALPHA

    def __init__(self, tree, space: Space):
        self.tree = tree  # NiceTree
        self.space = space

    def top(self):
        return AlphaCondition()

    def problems(self, p: AlphaCondition) -> list:
        self.check(p)
        out = []
        r = self.tree.ranks
        if not _is_function(p.t):
            out.append("t is not a function")
        for s, b in p.t:
            if s not in r or r[s] != ZERO:
                out.append(f"t defined at {s}, which is not a rank-0 node")
            if not 0 <= b < len(self.space.basis):
                out.append(f"t({s}) is not a basic set index")
        for s, x in p.F:
            if s not in r or r[s] == ZERO:
                out.append(f"F uses {s}, which is not a positive-rank node")
            if x not in self.space:
                out.append(f"F uses unknown point {x!r}")
        if out:
            return out
        tmap = p.t_map()
        for s, x in p.F:
            if s and (s[:-1], x) in p.F:
                out.append(f"({s[:-1]},{x}) and ({s},{x}) both in F")
            for n in range(self.tree.branching):
                b = tmap.get(s + (n,))
                if b is not None and self.space.member(x, b):
                    out.append(f"({s},{x}) in F but {x} ∈ t({s + (n,)})")
        return out

    def join(self, p, q):
        return AlphaCondition(p.t | q.t, p.F | q.F)

    def leq(self, p, q) -> bool:
        self.check(p, q)
        return p.t >= q.t and p.F >= q.F

    def rank(self, p: AlphaCondition, outside=()) -> OrdinalNotation:
        """max{r(s) : (s, x) ∈ F_p, x ∉ Q}, or 0."""
        Q = set(outside)
        return max((self.tree.ranks[s] for s, x in p.F if x not in Q), default=ZERO)


class PAlphaPoset(Poset):
    """Finite maps p on a nice tree with p(s) ≠ p(s⌢n); values below ``values``."""

    tag = PALPHA

    def __init__(self, tree, values: int):
        self.tree = tree
        self.values = values

    def top(self):
        return PCondition()

    def problems(self, p: PCondition) -> list:
        self.check(p)
        out = []
        if not _is_function(p.pairs):
            return ["assignment is not a function"]
        m = p.as_dict()
        for s, v in m.items():
            if s not in self.tree.ranks:
                out.append(f"{s} is not a node")
            if not (isinstance(v, int) and 0 <= v < self.values):
                out.append(f"value {v!r} at {s} outside 0..{self.values - 1}")
            if s and m.get(s[:-1]) == v:
                out.append(f"p({s[:-1]}) = p({s}) = {v}")
        return out

    def join(self, p, q):
        return PCondition(p.pairs | q.pairs)

    def leq(self, p, q) -> bool:
        self.check(p, q)
        return p.pairs >= q.pairs

    def rank(self, p: PCondition) -> OrdinalNotation:
        return max((self.tree.ranks[s] for s, _ in p.pairs), default=ZERO)


class SubtreePoset(Poset):
    """Finite subtrees of a binary truncation, ordered by end-extension."""

    tag = SUBTREE

    def __init__(self, tree: BinTreeTrunc):
        self.tree = tree

    def top(self):
        return SubtreeCondition(frozenset({()}))

    def problems(self, p: SubtreeCondition) -> list:
        self.check(p)
        out = []
        if () not in p.nodes:
            out.append("missing root")
        for s in p.nodes:
            if s not in self.tree.nodes:
                out.append(f"{s} is not in the ambient tree")
            if s and s[:-1] not in p.nodes:
                out.append(f"not prefix-closed at {s}")
        return out

    def join(self, p, q):
        return SubtreeCondition(p.nodes | q.nodes)

    def leq(self, p, q) -> bool:
        """p ⊇ q and every new node of p extends a terminal node of q."""
        self.check(p, q)
        if not p.nodes >= q.nodes:
            return False
        ends = q.terminals()
        return all(any(s[: len(e)] == e for e in ends) for s in p.nodes - q.nodes)

    def compatible(self, p, q) -> bool:
        self.check(p, q)
        j = self.join(p, q)
        return self.is_valid(j) and self.leq(j, p) and self.leq(j, q)


def compatible(poset: Poset, p, q) -> bool:
    """True iff p and q have a common extension (their join is a condition)."""
    return poset.compatible(p, q)
