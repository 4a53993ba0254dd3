"""Borel codes over Baire space and the machinery built on them.

A code is a finite tree whose internal nodes are labeled ``union`` or
``intersection`` and whose terminal nodes carry a basic clopen set.  A
terminal node may instead carry a label, standing for an empty union
(nothing) or an empty intersection (everything).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence

from .errors import NotRepresentableError, ValidationError
from .seqs import Point, Seq, as_seq, sequences, shortlex, window_points
from .trees import FinTree, rank

__all__ = [
    "UNION",
    "INTERSECTION",
    "BasicClopen",
    "EMPTY",
    "Cyl",
    "BorelCode",
    "Window",
    "eval_code",
    "extension_mask",
    "dual",
    "support",
    "encode_field",
    "pair_index",
    "unpair",
    "UniversalSet",
    "build_universal",
    "PeriodicPoint",
    "baire_to_cantor",
    "cantor_to_baire",
    "encode_blocks",
    "decode_blocks",
    "leaf_labels",
    "is_alternating",
]

UNION = "union"
INTERSECTION = "intersection"
KINDS = (UNION, INTERSECTION)


@dataclass(frozen=True)
class BasicClopen:
    """Either the empty set (``seq is None``) or the cylinder [seq]."""

    seq: Optional[Seq] = None

    def __post_init__(self):
        if self.seq is not None:
            object.__setattr__(self, "seq", as_seq(self.seq))

    @property
    def is_empty(self) -> bool:
        return self.seq is None

    def contains(self, x: Point) -> bool:
        return self.seq is not None and x.in_cylinder(self.seq)

    def __str__(self):
        return "∅" if self.seq is None else "[" + ",".join(map(str, self.seq)) + "]"


EMPTY = BasicClopen(None)


def Cyl(s: Iterable[int]) -> BasicClopen:
    return BasicClopen(tuple(s))


@dataclass(frozen=True)
class BorelCode:
    """Labeled finite tree; ``kind`` and ``leaf`` partition its nodes."""

    tree: FinTree
    kind: Dict[Seq, str]
    leaf: Dict[Seq, BasicClopen]

    def __post_init__(self):
        tree = self.tree if isinstance(self.tree, FinTree) else FinTree(frozenset(self.tree))
        kind = {as_seq(k): v for k, v in dict(self.kind).items()}
        leaf = {as_seq(k): v for k, v in dict(self.leaf).items()}
        for node, k in kind.items():
            if k not in KINDS:
                raise ValidationError(f"node {node}: kind must be union or intersection, got {k!r}")
        for node, b in leaf.items():
            if not isinstance(b, BasicClopen):
                raise ValidationError(f"node {node}: leaf label is not a basic clopen set")
        if set(kind) & set(leaf):
            raise ValidationError("a node carries both a kind and a leaf label")
        if set(kind) | set(leaf) != tree.nodes:
            raise ValidationError("kind and leaf labels must cover exactly the tree's nodes")
        kids = tree.children_map()
        for node in leaf:
            if kids[node]:
                raise ValidationError(f"leaf label on internal node {node}")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "leaf", leaf)
        object.__setattr__(self, "_kids", kids)

    # -- construction helpers ---------------------------------------------
    @classmethod
    def basic(cls, b: BasicClopen) -> "BorelCode":
        return cls(FinTree(frozenset({()})), {}, {(): b})

    @classmethod
    def constant(cls, value: bool) -> "BorelCode":
        """Empty intersection (everything) or empty union (nothing)."""
        return cls(FinTree(frozenset({()})), {(): INTERSECTION if value else UNION}, {})

    @classmethod
    def combine(cls, kind: str, children: Sequence["BorelCode"]) -> "BorelCode":
        """The code whose root has the given kind and the given sub-codes."""
        nodes, kinds, leaves = {()}, {(): kind}, {}
        for i, c in enumerate(children):
            for s in c.tree.nodes:
                nodes.add((i, *s))
            kinds.update({(i, *s): k for s, k in c.kind.items()})
            leaves.update({(i, *s): b for s, b in c.leaf.items()})
        return cls(FinTree(frozenset(nodes)), kinds, leaves)

    def children(self, s: Seq) -> list:
        return self._kids[s]

    def sub(self, s: Seq) -> "BorelCode":
        """The sub-code rooted at node s."""
        k = len(s)
        pick = lambda d: {t[k:]: v for t, v in d.items() if t[:k] == s}  # noqa: E731
        return BorelCode(self.tree.subtree(s), pick(self.kind), pick(self.leaf))

    @property
    def size(self) -> int:
        return len(self.tree.nodes)

    def rank(self):
        return rank(self.tree)[()]

    def __eq__(self, other):
        if not isinstance(other, BorelCode):
            return NotImplemented
        return (self.tree, self.kind, self.leaf) == (other.tree, other.kind, other.leaf)

    def __hash__(self):
        leaves = tuple(sorted(self.leaf.items(), key=lambda kv: kv[0]))
        return hash((self.tree, tuple(sorted(self.kind.items())), leaves))


def eval_code(code: BorelCode, x: Point, node: Seq = ()) -> bool:
    """Membership of x in the set coded at ``node``."""
    b = code.leaf.get(node)
    if b is not None:
        return b.contains(x)
    kids = code.children(node)
    if code.kind[node] == UNION:
        return any(eval_code(code, x, c) for c in kids)
    return all(eval_code(code, x, c) for c in kids)


def extension_mask(code: BorelCode, points: Sequence[Point], leaf_cache: Optional[dict] = None) -> int:
    """Bit i is set iff points[i] belongs to the coded set.

    Same recursion as :func:`eval_code`, but each node is evaluated on all
    points at once as a bitmask.  ``leaf_cache`` may be shared between calls
    that use the same ``points``.
    """
    full = (1 << len(points)) - 1
    if leaf_cache is None:
        leaf_cache = {}

    def go(node):
        b = code.leaf.get(node)
        if b is not None:
            if b not in leaf_cache:
                leaf_cache[b] = sum(1 << i for i, x in enumerate(points) if b.contains(x))
            return leaf_cache[b]
        kids = code.children(node)
        if code.kind[node] == UNION:
            acc = 0
            for c in kids:
                acc |= go(c)
            return acc
        acc = full
        for c in kids:
            acc &= go(c)
        return acc

    return go(())


def support(code: BorelCode) -> int:
    """Largest cylinder length used; eval only reads x below this index."""
    return max((len(b.seq) for b in code.leaf.values() if b.seq is not None), default=0)


# -- duality ---------------------------------------------------------------


@dataclass(frozen=True)
class Window:
    """The subspace of points with every coordinate below ``branching``.

    ``depth`` only fixes which points :meth:`points` enumerates; duality is
    exact on the whole subspace.
    """

    branching: int = 2
    depth: int = 0

    def __post_init__(self):
        if self.branching < 1 or self.depth < 0:
            raise ValidationError("window needs branching >= 1 and depth >= 0")

    def points(self) -> List[Point]:
        return window_points(self.branching, self.depth)

    def complement(self, b: BasicClopen) -> List[BasicClopen]:
        """Pairwise-disjoint cylinders covering the window minus b."""
        if b.is_empty:
            return [Cyl(())]
        s = b.seq
        if any(v >= self.branching for v in s):
            raise ValidationError(f"cylinder {b} lies outside the branching-{self.branching} window")
        return [Cyl(s[:i] + (v,)) for i in range(len(s)) for v in range(self.branching) if v != s[i]]


def dual(code: BorelCode, window: Optional[Window] = None) -> BorelCode:
    """A code for the complement, exact on points of the window.

    Union and intersection swap; each leaf is replaced by a union of the
    cylinders making up its complement; labeled terminals swap meaning.
    """
    if code.leaf and window is None:
        raise ValidationError("complementing a leaf needs a declared branching window")
    nodes = set(code.tree.nodes)
    kinds = {s: (INTERSECTION if k == UNION else UNION) for s, k in code.kind.items()}
    leaves = {}
    for s, b in code.leaf.items():
        kinds[s] = UNION
        for i, c in enumerate(window.complement(b)):
            nodes.add(s + (i,))
            leaves[s + (i,)] = c
    return BorelCode(FinTree(frozenset(nodes)), kinds, leaves)


def is_alternating(code: BorelCode) -> bool:
    """Strict Σ/Π alternation: no internal node has a child of its own kind."""
    return all(code.kind.get(c) != k for s, k in code.kind.items() for c in code.children(s))


# -- fields of sets ----------------------------------------------------------


def encode_field(ids: Sequence, sets: Sequence[Iterable]):
    """Characteristic-function map c(x)(n) = 1 iff x ∈ A_n, tail 0.

    Returns the map and a report checking that each A_n is the trace of the
    clopen set {y : y(n) = 1} and listing pairs of ids no A_n separates.
    """
    ids = list(ids)
    if len(set(ids)) != len(ids):
        raise ValidationError("duplicate point ids")
    known = set(ids)
    fam = []
    for n, a in enumerate(sets):
        a = set(a)
        if not a <= known:
            raise ValidationError(f"set {n} mentions unknown ids {sorted(a - known, key=str)}")
        fam.append(a)
    c = {x: Point(tuple(int(x in a) for a in fam), 0) for x in ids}
    traces = [{x for x in ids if c[x][n] == 1} == a for n, a in enumerate(fam)]
    unseparated = [
        (x, y) for i, x in enumerate(ids) for y in ids[i + 1:] if c[x] == c[y]
    ]
    report = {
        "traces_match": all(traces),
        "per_set": traces,
        "injective": not unseparated,
        "unseparated": unseparated,
    }
    return c, report


# -- pairing and universal sets ---------------------------------------------


def pair_index(n: int, m: int) -> int:
    """⟨n, m⟩ = 2^n (2m + 1) - 1."""
    if n < 0 or m < 0:
        raise ValidationError("pairing is defined on naturals")
    return (1 << n) * (2 * m + 1) - 1


def unpair(k: int):
    if k < 0:
        raise ValidationError("pairing is defined on naturals")
    k += 1
    n = (k & -k).bit_length() - 1
    return n, (k >> n) // 2


class UniversalSet:
    """A code U over pairs z = (x↾J)⌢y whose sections U_x run through a level.

    Level 1 sets are unions of basis elements; the set indexed by x is
    ⋃{B_i : x(i) = 1}.  A level k+1 set is ⋃_{n<width} of complements of
    level-k sets, the n-th one indexed by x_n(m) = x(⟨n, m⟩).

    Targets are given structurally: a level-1 target is a set of basis
    indices (or a code that is a union of basis leaves), a level k+1 target
    is a sequence of at most ``width`` level-k targets.
    """

    def __init__(self, level: int, basis: Sequence[BasicClopen], depth: int, width: int = 2,
                 max_nodes: int = 200_000):
        if level < 1:
            raise ValidationError("levels start at 1")
        if not basis:
            raise ValidationError("basis must be nonempty")
        self.level, self.basis, self.depth, self.width = level, list(basis), depth, width
        top = max((v for b in self.basis if b.seq for v in b.seq), default=0)
        self.window = Window(max(2, top + 1), depth)
        coords = self._coords(level, lambda m: m)
        self.param_length = max(coords) + 1
        estimate = len(self.basis) * (1 << (self.param_length - 1)) * (2 * width) ** (level - 1)
        if estimate > max_nodes:
            raise NotRepresentableError(
                f"universal code would need about {estimate} nodes (limit {max_nodes})"
            )
        self.code = self._build(level, lambda m: m)

    # parameter coordinates used by a level-k code whose index m sits at phi(m)
    def _coords(self, level, phi):
        if level == 1:
            return [phi(i) for i in range(len(self.basis))]
        out = []
        for n in range(self.width):
            out += self._coords(level - 1, lambda m, n=n: phi(pair_index(n, m)))
        return out

    def _build(self, level, phi) -> BorelCode:
        J = self.param_length
        if level == 1:
            parts = []
            for i, b in enumerate(self.basis):
                if b.is_empty:
                    continue
                k = phi(i)
                parts += [
                    BorelCode.basic(Cyl(q + b.seq)) for q in product((0, 1), repeat=J) if q[k] == 1
                ]
            return BorelCode.combine(UNION, parts)
        subs = [dual(self._build(level - 1, lambda m, n=n: phi(pair_index(n, m))), self.window)
                for n in range(self.width)]
        return BorelCode.combine(UNION, subs)

    def pair(self, x: Point, y: Point) -> Point:
        return Point(x.restrict(self.param_length) + y.prefix, y.tail)

    def section(self, x: Point, y: Point) -> bool:
        return eval_code(self.code, self.pair(x, y))

    def diagonal(self, x: Point) -> bool:
        """D(x) = (x, x) ∈ U."""
        return eval_code(self.code, self.pair(x, x))

    def _normalize(self, target, level):
        if level == 1:
            if isinstance(target, BorelCode):
                return self._parse_open(target)
            idx = frozenset(target)
            bad = [i for i in idx if not (isinstance(i, int) and 0 <= i < len(self.basis))]
            if bad:
                raise NotRepresentableError(f"basis indices out of range: {sorted(bad)}")
            return idx
        if isinstance(target, (BorelCode, set, frozenset)):
            raise NotRepresentableError(f"a level-{level} target must be a sequence of lower targets")
        parts = list(target)
        if not parts or len(parts) > self.width:
            raise NotRepresentableError(f"a level-{level} target needs 1..{self.width} components")
        return tuple(self._normalize(p, level - 1) for p in parts)

    def _parse_open(self, code: BorelCode) -> frozenset:
        """Read a level-1 code: a basis leaf, or a union of basis leaves."""
        if () in code.leaf:
            leaves = [code.leaf[()]]
        elif code.kind[()] == UNION and all(c in code.leaf for c in code.children(())):
            leaves = [code.leaf[c] for c in code.children(())]
        else:
            raise NotRepresentableError("level-1 targets are unions of basis leaves")
        out = set()
        for b in leaves:
            if b.is_empty:
                continue
            if b not in self.basis:
                raise NotRepresentableError(f"leaf {b} is not in the basis")
            out.add(self.basis.index(b))
        return frozenset(out)

    def encode(self, target) -> Point:
        """A parameter x (tail 0) with U_x equal to the target."""
        t = self._normalize(target, self.level)
        values = [0] * self.param_length
        self._place(t, self.level, lambda m: m, values)
        return Point(tuple(values), 0)

    def _place(self, t, level, phi, values):
        if level == 1:
            for i in t:
                values[phi(i)] = 1
            return
        padded = list(t) + [t[-1]] * (self.width - len(t))
        for n, part in enumerate(padded):
            self._place(part, level - 1, lambda m, n=n: phi(pair_index(n, m)), values)

    def target_code(self, target) -> BorelCode:
        """The code of a target, built directly from the basis."""
        return self._target_code(self._normalize(target, self.level), self.level)

    def _target_code(self, t, level) -> BorelCode:
        if level == 1:
            return BorelCode.combine(UNION, [BorelCode.basic(self.basis[i]) for i in sorted(t)])
        return BorelCode.combine(UNION, [dual(self._target_code(p, level - 1), self.window) for p in t])

    def verify(self, target) -> list:
        """Window points y where U_x and the target disagree (empty when exact)."""
        x = self.encode(target)
        ref = self.target_code(target)
        return [y for y in self.window.points() if self.section(x, y) != eval_code(ref, y)]


def build_universal(levels, basis, depth: int, width: int = 2):
    """One universal set per requested level."""
    return {lv: UniversalSet(lv, basis, depth, width) for lv in levels}


# -- Baire space into Cantor space --------------------------------------------


@dataclass(frozen=True)
class PeriodicPoint:
    """Binary point: a prefix followed by a block repeated forever."""

    prefix: Seq
    cycle: Seq

    def __post_init__(self):
        if not self.cycle:
            raise ValidationError("cycle must be nonempty")

    def __getitem__(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        return self.cycle[(i - len(self.prefix)) % len(self.cycle)]

    def restrict(self, n: int) -> Seq:
        return tuple(self[i] for i in range(n))


def encode_blocks(s: Sequence[int]) -> Seq:
    """0^{s(0)} 1 0^{s(1)} 1 …"""
    out = []
    for v in s:
        out += [0] * v + [1]
    return tuple(out)


def decode_blocks(bits: Sequence[int]):
    """Inverse of :func:`encode_blocks` on complete blocks; returns (values, leftover zeros)."""
    vals, run = [], 0
    for b in bits:
        if b == 1:
            vals.append(run)
            run = 0
        elif b == 0:
            run += 1
        else:
            raise ValidationError(f"not a binary digit: {b!r}")
    return tuple(vals), run


def baire_to_cantor(f: Point):
    """The binary point 0^{f(0)} 1 0^{f(1)} 1 …

    A tail of 0s becomes a tail of 1s (a :class:`Point`); a tail c > 0
    becomes the repeating block 0^c 1 (a :class:`PeriodicPoint`).
    """
    head = encode_blocks(f.prefix)
    if f.tail == 0:
        return Point(head, 1)
    return PeriodicPoint(head, encode_blocks((f.tail,)))


def cantor_to_baire(bits) -> Point:
    """Inverse of :func:`baire_to_cantor` on its image."""
    if isinstance(bits, PeriodicPoint):
        vals, run = decode_blocks(bits.prefix)
        cvals, crun = decode_blocks(bits.cycle)
        if run or crun or len(set(cvals)) > 1:
            raise NotRepresentableError("periodic part is not a whole repeated block")
        return Point(vals, cvals[0])
    if bits.tail != 1:
        raise NotRepresentableError("points ending in zeros are outside the image")
    vals, run = decode_blocks(bits.prefix)
    if run:
        # the leftover zeros close with the first 1 of the tail
        vals = vals + (run,)
    return Point(vals, 0)


def leaf_labels(branching: int, depth: int) -> List[BasicClopen]:
    """EMPTY followed by every cylinder of length ≤ depth, shortlex."""
    out = [EMPTY]
    for n in range(depth + 1):
        out += [Cyl(s) for s in sorted(sequences(branching, n), key=shortlex)]
    return out
