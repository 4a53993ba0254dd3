"""Π_β sentences of infinitary propositional logic, restricted to finite conjunctions.

A sentence is an atom P_i or ⋀⋀_{ψ∈Γ} ¬ψ.  A model is a finite set Y of
atom indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import FrozenSet, Iterable, Tuple, Union

from ..errors import ValidationError
from ..ordinals import OrdinalNotation, nat


@dataclass(frozen=True)
class Atom:
    index: int

    def __str__(self):
        return f"P{self.index}"


@dataclass(frozen=True)
class BigAndNeg:
    members: Tuple["PiSentence", ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))

    def __str__(self):
        return "⋀{" + ", ".join("¬" + str(m) for m in self.members) + "}"


PiSentence = Union[Atom, BigAndNeg]


def sentence_rank(theta: PiSentence) -> int:
    """0 for atoms; otherwise the least β ≥ 1 above every member's rank."""
    if isinstance(theta, Atom):
        return 0
    if isinstance(theta, BigAndNeg):
        return max([1] + [sentence_rank(m) + 1 for m in theta.members])
    raise ValidationError(f"not a sentence: {theta!r}")


def satisfies(Y: FrozenSet[int], theta: PiSentence) -> bool:
    if isinstance(theta, Atom):
        return theta.index in Y
    if isinstance(theta, BigAndNeg):
        return all(not satisfies(Y, m) for m in theta.members)
    raise ValidationError(f"not a sentence: {theta!r}")


def pi_eval(theta: PiSentence, Y: Iterable[int]):
    """(Y ⊨ θ, rank of θ)."""
    return satisfies(frozenset(Y), theta), nat(sentence_rank(theta))


def grammar(kappa: int, depth: int, width: int = 2) -> list:
    """Sentences over P_0..P_{κ-1} built in ``depth`` rounds.

    Round 0 gives the atoms; each later round adds ⋀⋀¬ over every set of at
    most ``width`` distinct sentences already built.
    """
    level = [Atom(i) for i in range(kappa)]
    for _ in range(depth):
        new = [BigAndNeg(g) for k in range(width + 1) for g in combinations(level, k)]
        seen = set(level)
        level = level + [s for s in new if s not in seen]
    return level


def to_json(theta: PiSentence):
    if isinstance(theta, Atom):
        return {"atom": theta.index}
    return {"and_not": [to_json(m) for m in theta.members]}


def from_json(data) -> PiSentence:
    if isinstance(data, dict) and set(data) == {"atom"}:
        i = data["atom"]
        if isinstance(i, bool) or not isinstance(i, int) or i < 0:
            raise ValidationError("atom index must be a natural")
        return Atom(i)
    if isinstance(data, dict) and set(data) == {"and_not"} and isinstance(data["and_not"], list):
        return BigAndNeg(tuple(from_json(m) for m in data["and_not"]))
    raise ValidationError(f"not a sentence: {data!r}")


def rank_ordinal(theta: PiSentence) -> OrdinalNotation:
    return nat(sentence_rank(theta))
