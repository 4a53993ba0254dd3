"""Hierarchies inside finite boolean algebras, ring closure chains and quotients.

Elements of a finite algebra are bitmasks over its atoms.  In a finite
algebra "countable" meets and joins are just arbitrary ones, so every
index computed here is a finite stand-in for the transfinite notion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import ValidationError


@dataclass(frozen=True)
class FiniteBA:
    """The power set algebra of ``atoms`` atoms; elements are ints in [0, 2**atoms)."""

    atoms: int

    def __post_init__(self):
        if not isinstance(self.atoms, int) or self.atoms < 0:
            raise ValidationError("atom count must be a natural number")

    @property
    def one(self) -> int:
        return (1 << self.atoms) - 1

    @property
    def zero(self) -> int:
        return 0

    @property
    def size(self) -> int:
        return 1 << self.atoms

    def elements(self) -> range:
        return range(self.size)

    def comp(self, a: int) -> int:
        return self.one & ~a

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a <= self.one

    def check(self, elems) -> frozenset:
        elems = frozenset(elems)
        for a in elems:
            if not self.contains(a):
                raise ValidationError(f"{a!r} is not an element of the {self.atoms}-atom algebra")
        return elems


def all_meets(ba: FiniteBA, gens: Iterable[int]) -> frozenset:
    """Meets of every subset of ``gens``, the empty meet being 1."""
    out = {ba.one}
    for g in set(gens):
        out |= {x & g for x in out}
    return frozenset(out)


def hierarchy_levels(ba: FiniteBA, C) -> Tuple[List[frozenset], Optional[int]]:
    """Levels Π_0(C) = C, Π_{k+1}(C) = meets of complements of Π_{≤k}(C).

    Iteration stops as soon as a level would repeat its predecessor; from
    then on every level is the same.  The second value is the least k
    with Π_k(C) the whole algebra, or None if that never happens.
    """
    C = ba.check(C)
    levels = [C]
    union = set(C)
    while True:
        nxt = all_meets(ba, {ba.comp(a) for a in union})
        if nxt == levels[-1]:
            break
        levels.append(nxt)
        union |= nxt
    full = ba.size
    ordinal = next((k for k, lev in enumerate(levels) if len(lev) == full), None)
    return levels, ordinal


def generated_subalgebra(ba: FiniteBA, C) -> frozenset:
    """Closure of C ∪ {0, 1} under complement, meet and join (breadth-first)."""
    out = set(ba.check(C)) | {ba.zero, ba.one}
    frontier = list(out)
    while frontier:
        new = set()
        for a in frontier:
            cand = [ba.comp(a)]
            for b in list(out):
                cand += [a & b, a | b]
            new.update(c for c in cand if c not in out)
        out |= new
        frontier = list(new)
    return frozenset(out)


def min_ord(ba: FiniteBA) -> Tuple[Optional[int], frozenset]:
    """Least ord over every generating set C, with the first C achieving it."""
    if ba.size > 16:
        raise ValidationError("the exhaustive search is limited to algebras of at most 16 elements")
    best: Tuple[Optional[int], frozenset] = (None, frozenset())
    elems = list(ba.elements())
    for k in range(len(elems) + 1):
        for C in combinations(elems, k):
            _, o = hierarchy_levels(ba, C)
            if o is not None and (best[0] is None or o < best[0]):
                best = (o, frozenset(C))
        if best[0] == 0:
            break
    return best


# -- families of sets ----------------------------------------------------------


@dataclass(frozen=True)
class FieldOfSets:
    """A family of subsets of a finite universe, with a declared closure kind."""

    universe: Tuple
    members: FrozenSet[frozenset]
    kind: str = "field"

    def __post_init__(self):
        universe = tuple(self.universe)
        if len(set(universe)) != len(universe):
            raise ValidationError("duplicate universe labels")
        members = frozenset(frozenset(m) for m in self.members)
        known = set(universe)
        for m in members:
            if not m <= known:
                raise ValidationError(f"member {sorted(m, key=str)} leaves the universe")
        if self.kind not in ("field", "ring", "family"):
            raise ValidationError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "universe", universe)
        object.__setattr__(self, "members", members)

    @property
    def top(self) -> frozenset:
        return frozenset(self.universe)

    def problems(self) -> list:
        """Reasons the family is not of its declared kind."""
        out = []
        ms = self.members
        if self.kind == "field":
            if self.top not in ms:
                out.append("universe missing")
            for a in ms:
                if self.top - a not in ms:
                    out.append(f"complement of {_fmt(a)} missing")
        if self.kind in ("field", "ring"):
            for a, b in combinations(ms, 2):
                if a & b not in ms:
                    out.append(f"{_fmt(a)} ∩ {_fmt(b)} missing")
                if a | b not in ms:
                    out.append(f"{_fmt(a)} ∪ {_fmt(b)} missing")
        return out

    def validate(self) -> "FieldOfSets":
        bad = self.problems()
        if bad:
            raise ValidationError(f"not a {self.kind}: {bad[0]}")
        return self

    def to_json(self) -> dict:
        return {
            "universe": list(self.universe),
            "members": sorted_members(self.universe, self.members),
        }


def _fmt(a) -> str:
    return "{" + ",".join(sorted(map(str, a))) + "}"


def sorted_members(universe: Sequence, members) -> list:
    pos = {u: i for i, u in enumerate(universe)}
    rows = [sorted(m, key=pos.__getitem__) for m in members]
    return sorted(rows, key=lambda r: (len(r), [pos[u] for u in r]))


def _close(members: set, op) -> set:
    """Closure under a binary operation (so under every nonempty finite combination)."""
    out = set(members)
    frontier = list(out)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(out):
                c = op(a, b)
                if c not in out:
                    new.add(c)
        out |= new
        frontier = list(new)
    return out


def lattice_closure(members) -> frozenset:
    """Smallest family containing ``members`` closed under binary ∪ and ∩."""
    out = set(members)
    while True:
        nxt = {a | b for a in out for b in out} | {a & b for a in out for b in out} | out
        if nxt == out:
            return frozenset(out)
        out = nxt


def ring_levels(R: FieldOfSets, require_ring: bool = True):
    """R_0 = R; R_{n+1} is the union closure of R_n for even n, intersection closure for odd n.

    Unions and intersections are over nonempty finite subfamilies.  Returns
    (levels, index, closure) where index is the least n with R_n closed under
    both operations and ``closure`` is the lattice closure computed
    separately.  With ``require_ring`` the input must already be a ring.
    """
    if require_ring and R.kind != "ring":
        raise ValidationError("ring_levels expects a family declared as a ring")
    if require_ring:
        R = FieldOfSets(R.universe, R.members, "ring").validate()
    levels = [frozenset(R.members)]
    n = 0
    while True:
        cur = set(levels[-1])
        closed = _close(cur, frozenset.union) == cur and _close(cur, frozenset.intersection) == cur
        if closed:
            break
        op = frozenset.union if n % 2 == 0 else frozenset.intersection
        levels.append(frozenset(_close(cur, op)))
        n += 1
    return levels, n, lattice_closure(R.members)


# -- quotients ------------------------------------------------------------------


def ideal_problems(F: FieldOfSets, ideal) -> list:
    out = []
    ideal = frozenset(frozenset(a) for a in ideal)
    for a in ideal:
        if a not in F.members:
            out.append(f"{_fmt(a)} is not in the field")
    if out:
        return out
    if frozenset() not in ideal:
        out.append("∅ missing from the ideal")
    if F.top in ideal:
        out.append("the ideal contains the universe")
    for a in ideal:
        for b in F.members:
            if b <= a and b not in ideal:
                out.append(f"not downward closed: {_fmt(b)} ⊆ {_fmt(a)}")
    for a, b in combinations(ideal, 2):
        if a | b not in ideal:
            out.append(f"not closed under union: {_fmt(a)} ∪ {_fmt(b)}")
    return out


@dataclass(frozen=True)
class Quotient:
    """F/I as a power set algebra over the atoms of F outside the ideal."""

    algebra: FiniteBA
    atoms: Tuple[frozenset, ...]
    field: FieldOfSets
    ideal: FrozenSet[frozenset]

    def map(self, a) -> int:
        a = frozenset(a)
        return sum(1 << i for i, at in enumerate(self.atoms) if at <= a)

    def classes(self) -> Dict[int, list]:
        out: Dict[int, list] = {}
        for m in self.field.members:
            out.setdefault(self.map(m), []).append(m)
        return out

    def audit(self) -> list:
        """Homomorphism, surjectivity, kernel and class checks; empty when all hold."""
        F, ba, out = self.field, self.algebra, []
        ms = list(F.members)
        for a in ms:
            if self.map(F.top - a) != ba.comp(self.map(a)):
                out.append(f"complement fails at {_fmt(a)}")
            if (self.map(a) == 0) != (a in self.ideal):
                out.append(f"kernel mismatch at {_fmt(a)}")
            for b in ms:
                if self.map(a & b) != self.map(a) & self.map(b):
                    out.append(f"meet fails at {_fmt(a)}, {_fmt(b)}")
                if self.map(a | b) != self.map(a) | self.map(b):
                    out.append(f"join fails at {_fmt(a)}, {_fmt(b)}")
                if ((a ^ b) in self.ideal) != (self.map(a) == self.map(b)):
                    out.append(f"class mismatch at {_fmt(a)}, {_fmt(b)}")
        if {self.map(m) for m in ms} != set(ba.elements()):
            out.append("map is not surjective")
        return out

    def to_json(self) -> dict:
        pos = {u: i for i, u in enumerate(self.field.universe)}
        return {
            "atoms": self.algebra.atoms,
            "elements": list(self.algebra.elements()),
            "atom_sets": [sorted(a, key=pos.__getitem__) for a in self.atoms],
            "map": [{"set": m, "image": self.map(m)} for m in sorted_members(self.field.universe, self.field.members)],
        }


def field_atoms(F: FieldOfSets) -> list:
    nonempty = [m for m in F.members if m]
    return [m for m in nonempty if not any(o < m for o in nonempty)]


def quotient(F: FieldOfSets, ideal) -> Quotient:
    F = FieldOfSets(F.universe, F.members, "field").validate()
    ideal = frozenset(frozenset(a) for a in ideal)
    bad = ideal_problems(F, ideal)
    if bad:
        raise ValidationError(f"invalid ideal: {bad[0]}")
    pos = {u: i for i, u in enumerate(F.universe)}
    kept = [a for a in field_atoms(F) if a not in ideal]
    kept.sort(key=lambda a: min(pos[u] for u in a))
    return Quotient(FiniteBA(len(kept)), tuple(kept), F, ideal)


def powerset_field(universe) -> FieldOfSets:
    universe = tuple(universe)
    members = [frozenset(c) for k in range(len(universe) + 1) for c in combinations(universe, k)]
    return FieldOfSets(universe, members, "field")


__all__ = [
    "FiniteBA",
    "FieldOfSets",
    "Quotient",
    "all_meets",
    "hierarchy_levels",
    "generated_subalgebra",
    "min_ord",
    "lattice_closure",
    "ring_levels",
    "ideal_problems",
    "quotient",
    "field_atoms",
    "powerset_field",
    "sorted_members",
]
