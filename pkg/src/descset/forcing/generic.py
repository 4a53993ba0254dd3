"""Deterministic generic-filter runs: dense sets, the driver, extraction and replay.

A run starts at the top condition and, for each dense set in order, moves
to the first candidate extension (in a fixed enumeration) that is a
condition and lies in the dense set.  The conditions visited form a
descending chain, recorded in a :class:`Transcript`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterator, Optional

from ..errors import ExtensionError, MalformedInputError, ValidationError
from ..seqs import as_seq
from .posets import (
    ALPHA,
    FIN,
    PALPHA,
    SILVER,
    SUBTREE,
    AlphaCondition,
    FinCondition,
    PCondition,
    Poset,
    SilverCondition,
    SubtreeCondition,
    BSubU,
    XNotinU,
)


@dataclass(frozen=True)
class DenseSpec:
    """A named dense set: a membership test plus a canonical candidate list."""

    kind: str
    poset: str
    params: tuple
    met: Callable = field(compare=False, repr=False)
    candidates: Callable = field(compare=False, repr=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, **dict(self.params)}

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.kind}({inner})"


@dataclass
class Transcript:
    """conditions[0] is the top; conditions[i + 1] meets specs[i]."""

    poset: str
    conditions: list
    specs: list

    @property
    def final(self):
        return self.conditions[-1]


def rasiowa_sikorski(poset: Poset, specs) -> Transcript:
    p = poset.top()
    conds = [p]
    for i, spec in enumerate(specs):
        if spec.poset != poset.tag:
            raise ValidationError(f"dense set {i} ({spec}) is for the {spec.poset} poset")
        if not spec.met(poset, p):
            for q in spec.candidates(poset, p):
                if poset.is_valid(q) and poset.leq(q, p) and spec.met(poset, q):
                    p = q
                    break
            else:
                raise ExtensionError(f"dense set {i} ({spec}) has no extension within bounds", i)
        conds.append(p)
    return Transcript(poset.tag, conds, list(specs))


def verify_transcript(poset: Poset, transcript: Transcript) -> list:
    """Every violated invariant, in order; empty when the run is sound."""
    out = []
    conds = transcript.conditions
    if transcript.poset != poset.tag:
        return [f"transcript is for {transcript.poset}, poset is {poset.tag}"]
    if not conds:
        return ["transcript has no conditions"]
    if len(conds) != len(transcript.specs) + 1:
        out.append(f"{len(conds)} conditions for {len(transcript.specs)} dense sets")
    for i, c in enumerate(conds):
        try:
            bad = poset.problems(c)
        except ValidationError as exc:
            bad = [str(exc)]
        if bad:
            out.append(f"condition {i} invalid: {bad[0]}")
            continue
        if i and not poset.leq(c, conds[i - 1]):
            out.append(f"condition {i} does not extend condition {i - 1}")
    for i, spec in enumerate(transcript.specs):
        if i + 1 < len(conds) and not spec.met(poset, conds[i + 1]):
            out.append(f"condition {i + 1} misses dense set {i} ({spec})")
        if not spec.met(poset, transcript.final):
            out.append(f"final condition misses dense set {i} ({spec})")
    return out


# -- Silver ------------------------------------------------------------------


def silver_dense(x: Hashable, kind: str, n: Optional[int] = None, bound: int = 64,
                 space=None) -> DenseSpec:
    """D_x (some "x ∉ U_n" is present) or E_x^n (some B ∋ x has "B ⊆ U_n")."""
    if space is not None:
        if x not in space:
            raise ValidationError(f"unknown point {x!r}")
        if kind == "E" and not space.separating(x, ()):
            raise ValidationError(f"no basic set contains {x!r}")
    if kind == "D":
        def met(poset, p):
            return any(s.kind == 1 and s.x == x for s in p.sentences)

        def cands(poset, p) -> Iterator:
            for m in range(bound):
                yield SilverCondition(p.sentences | {XNotinU(x, m)})

        return DenseSpec("D", SILVER, (("x", x), ("bound", bound)), met, cands)
    if kind == "E":
        if n is None or n < 0:
            raise ValidationError("E_x^n needs an index n")

        def met(poset, p):
            return any(s.kind == 0 and s.n == n and poset.space.member(x, s.b) for s in p.sentences)

        def cands(poset, p) -> Iterator:
            excluded = {s.x for s in p.sentences if s.kind == 1 and s.n == n}
            options = poset.space.separating(x, excluded)
            if not options:
                raise ExtensionError(
                    f"no basic set contains {x!r} and avoids {sorted(excluded, key=str)}; "
                    "the basis does not separate these points"
                )
            for b in options:
                yield SilverCondition(p.sentences | {BSubU(b, n)})

        return DenseSpec("E", SILVER, (("x", x), ("n", n)), met, cands)
    raise ValidationError(f"unknown Silver dense set kind {kind!r}")


def silver_target_specs(space, target, N: int, bound: Optional[int] = None) -> list:
    """{D_x : x ∉ A} followed by {E_x^n : x ∈ A, n < N}."""
    target = set(target)
    bound = N if bound is None else bound
    out = [silver_dense(x, "D", bound=bound, space=space) for x in space.points if x not in target]
    out += [silver_dense(x, "E", n, space=space) for n in range(N) for x in space.points if x in target]
    return out


def silver_extract(poset, transcript: Transcript, N: int):
    """U_n = ⋃{B : "B ⊆ U_n" in the final condition}; trace = ⋂_{n<N} U_n."""
    final = transcript.final
    U = []
    for n in range(N):
        members = set()
        for s in final.sentences:
            if s.kind == 0 and s.n == n:
                members |= poset.space.basis[s.b]
        U.append(members)
    trace = {x for x in poset.space.points if all(x in u for u in U)}
    return U, trace


def antichain_code(p: SilverCondition) -> dict:
    """s_p: x ↦ 0 if "x ∈ ⋂U" ∈ p, n + 1 if "x ∉ U_n" ∈ p."""
    out = {}
    for s in p.ordered():
        if s.kind == 0:
            continue
        v = 0 if s.kind == 2 else s.n + 1
        if s.x in out:
            raise ValidationError(f"point {s.x!r} is mentioned twice; s_p is not a function")
        out[s.x] = v
    return out


def type_one(p: SilverCondition) -> frozenset:
    return frozenset(s for s in p.sentences if s.kind == 0)


# -- FIN ---------------------------------------------------------------------


def fin_dense(i) -> DenseSpec:
    """Decide coordinate i."""

    def met(poset, p):
        return any(j == i for j, _ in p.pairs)

    def cands(poset, p):
        for v in (0, 1):
            yield FinCondition(p.pairs | {(i, v)})

    return DenseSpec("decide", FIN, (("i", i),), met, cands)


# -- P_α -----------------------------------------------------------------------


def palpha_dense(kind: str, s, k: Optional[int] = None, values: Optional[int] = None) -> DenseSpec:
    """D_s (s gets a value) or E_s^k (k appears at s or at a child of s)."""
    s = as_seq(s)
    if kind == "D_s":
        def met(poset, p):
            return any(u == s for u, _ in p.pairs)

        def cands(poset, p):
            if s not in poset.tree.ranks:
                raise ExtensionError(f"{s} is not a node of the tree")
            for v in range(poset.values):
                yield PCondition(p.pairs | {(s, v)})

        return DenseSpec("D_s", PALPHA, (("s", s),), met, cands)
    if kind == "E_s":
        if k is None or k < 0:
            raise ValidationError("E_s^k needs a value k")
        if values is not None and k >= values:
            raise ValidationError(f"value {k} is outside the alphabet 0..{values - 1}")

        def met(poset, p):
            d = dict(p.pairs)
            return d.get(s) == k or any(d.get(s + (n,)) == k for n in range(poset.tree.branching))

        def cands(poset, p):
            if k >= poset.values:
                raise ExtensionError(f"value {k} is outside the alphabet 0..{poset.values - 1}")
            d = dict(p.pairs)
            if s not in d:
                yield PCondition(p.pairs | {(s, k)})
            for n in range(poset.tree.branching):
                c = s + (n,)
                if c in poset.tree.ranks and c not in d:
                    yield PCondition(p.pairs | {(c, k)})

        return DenseSpec("E_s", PALPHA, (("s", s), ("k", k)), met, cands)
    raise ValidationError(f"unknown P_α dense set kind {kind!r}")


def palpha_extract(transcript: Transcript) -> dict:
    """The generic map: the union of the conditions, i.e. the final one."""
    return dict(transcript.final.pairs)


def palpha_audit(poset, transcript: Transcript, K: int) -> list:
    """Nodes where the value at s should be the unique value < K missing below s.

    A node is checked when D_s, every E_s^k for k < K, and D for every
    child were met.  Returns (node, value, child values, ok) records.
    """
    x = palpha_extract(transcript)
    met_d = {dict(sp.params)["s"] for sp in transcript.specs if sp.kind == "D_s"}
    met_e = {(dict(sp.params)["s"], dict(sp.params)["k"]) for sp in transcript.specs if sp.kind == "E_s"}
    out = []
    for s in sorted(met_d, key=lambda u: (len(u), u)):
        kids = [s + (n,) for n in range(poset.tree.branching) if s + (n,) in poset.tree.ranks]
        if not kids or not all(c in met_d for c in kids):
            continue
        if not all((s, k) in met_e for k in range(K)):
            continue
        below = {x[c] for c in kids}
        missing = [k for k in range(K) if k not in below]
        ok = x[s] not in below and (len(missing) != 1 or missing == [x[s]])
        out.append((s, x[s], sorted(below), ok))
    return out


# -- α-forcing -------------------------------------------------------------------


def alpha_dense(s, x) -> DenseSpec:
    """Decide whether x ∈ U_s.

    Met when (s, x) ∈ F, or, for rank-1 nodes, some t(s⌢n) contains x, or,
    for higher ranks, some (s⌢n, x) ∈ F.
    """
    s = as_seq(s)

    def met(poset, p):
        if (s, x) in p.F:
            return True
        r = poset.tree.ranks[s]
        kids = [s + (n,) for n in range(poset.tree.branching)]
        if r.is_successor and r.pred().is_zero:
            t = p.t_map()
            return any(c in t and poset.space.member(x, t[c]) for c in kids)
        return any((c, x) in p.F for c in kids)

    def cands(poset, p):
        if s not in poset.tree.ranks or poset.tree.ranks[s].is_zero:
            raise ExtensionError(f"{s} is not a positive-rank node")
        yield AlphaCondition(p.t, p.F | {(s, x)})
        r = poset.tree.ranks[s]
        t = p.t_map()
        for n in range(poset.tree.branching):
            c = s + (n,)
            if c not in poset.tree.ranks:
                continue
            if r.is_successor and r.pred().is_zero:
                if c in t:
                    continue
                for b in range(len(poset.space.basis)):
                    if poset.space.member(x, b):
                        yield AlphaCondition(p.t | {(c, b)}, p.F)
            else:
                yield AlphaCondition(p.t, p.F | {(c, x)})

    return DenseSpec("alpha", ALPHA, (("s", s), ("x", x)), met, cands)


def alpha_sections(poset, p: AlphaCondition) -> dict:
    """x ∈ U_s computed by recursion: U_s = t(s) at rank 0, ⋂_n ¬U_{s⌢n} above."""
    t = p.t_map()
    memo = {}

    def inside(s, x):
        key = (s, x)
        if key not in memo:
            if poset.tree.ranks[s].is_zero:
                memo[key] = s in t and poset.space.member(x, t[s])
            else:
                kids = [c for c in (s + (n,) for n in range(poset.tree.branching))
                        if c in poset.tree.ranks]
                memo[key] = not any(inside(c, x) for c in kids)
        return memo[key]

    return {(s, x): inside(s, x) for s in poset.tree.positive() for x in poset.space.points}


def alpha_audit(poset, transcript: Transcript) -> list:
    """For decided pairs whose whole subtree was decided: (s, x) ∈ F iff x ∈ U_s."""
    decided = {(dict(sp.params)["s"], dict(sp.params)["x"]) for sp in transcript.specs
               if sp.kind == "alpha"}
    final = transcript.final
    sections = alpha_sections(poset, final)
    out = []
    positive = poset.tree.positive()
    for s, x in sorted(decided, key=lambda sx: (len(sx[0]), sx[0], str(sx[1]))):
        below = [u for u in positive if u[: len(s)] == s]
        if not all((u, x) in decided for u in below):
            continue
        out.append((s, x, ((s, x) in final.F) == sections[(s, x)]))
    return out


# -- subtree poset ----------------------------------------------------------------


def subtree_dense(k: int) -> DenseSpec:
    """Every terminal node of the condition has length ≥ min(k, ambient depth)."""

    def met(poset, p):
        goal = min(k, poset.tree.depth)
        return all(len(e) >= goal for e in p.terminals())

    def cands(poset, p):
        goal = min(k, poset.tree.depth)
        grow = set(p.nodes)
        for e in p.terminals():
            if len(e) < goal:
                grow |= {s for s in poset.tree.nodes if s[: len(e)] == e and len(s) <= goal}
        yield SubtreeCondition(frozenset(grow))

    return DenseSpec("grow", SUBTREE, (("k", k),), met, cands)


def subtree_extract(transcript: Transcript) -> frozenset:
    return frozenset().union(*(c.nodes for c in transcript.conditions))


# -- dense set (de)serialization-----------------------------------------------------------


def spec_from_json(poset, data) -> DenseSpec:
    if not isinstance(data, dict) or "kind" not in data:
        raise MalformedInputError(f"dense set must be an object with a kind: {data!r}")
    kind = data["kind"]
    try:
        if poset.tag == SILVER and kind in ("D", "E"):
            return silver_dense(data["x"], kind, data.get("n"), data.get("bound", 64), poset.space)
        if poset.tag == PALPHA and kind in ("D_s", "E_s"):
            return palpha_dense(kind, data["s"], data.get("k"), poset.values)
        if poset.tag == FIN and kind == "decide":
            return fin_dense(data["i"])
        if poset.tag == ALPHA and kind == "alpha":
            return alpha_dense(data["s"], data["x"])
        if poset.tag == SUBTREE and kind == "grow":
            return subtree_dense(data["k"])
    except KeyError as exc:
        raise MalformedInputError(f"dense set {data!r} lacks field {exc}") from None
    raise MalformedInputError(f"dense set kind {kind!r} does not apply to the {poset.tag} poset")


__all__ = [
    "DenseSpec",
    "Transcript",
    "rasiowa_sikorski",
    "verify_transcript",
    "silver_dense",
    "silver_target_specs",
    "silver_extract",
    "antichain_code",
    "type_one",
    "fin_dense",
    "palpha_dense",
    "palpha_extract",
    "palpha_audit",
    "alpha_dense",
    "alpha_sections",
    "alpha_audit",
    "subtree_dense",
    "subtree_extract",
    "spec_from_json",
]
