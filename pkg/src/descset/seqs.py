"""Finite sequences of naturals and finitely-determined points of Baire space."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .errors import ValidationError

Seq = tuple  # tuple[int, ...]


def as_seq(s) -> Seq:
    try:
        seq = tuple(s)
    except TypeError:
        raise ValidationError(f"not a sequence: {s!r}") from None
    for v in seq:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValidationError(f"sequence entries must be naturals, got {v!r}")
    return seq


def is_prefix(s: Seq, t: Seq) -> bool:
    """s is an initial segment of t (s ⊆ t)."""
    return len(s) <= len(t) and t[: len(s)] == s


def is_proper_prefix(s: Seq, t: Seq) -> bool:
    return len(s) < len(t) and t[: len(s)] == s


def comparable(s: Seq, t: Seq) -> bool:
    return is_prefix(s, t) or is_prefix(t, s)


def shortlex(s: Seq):
    return (len(s), s)


def sequences(branching: int, length: int) -> Iterator[Seq]:
    return product(range(branching), repeat=length)


def sequences_upto(branching: int, depth: int) -> Iterator[Seq]:
    for n in range(depth + 1):
        yield from sequences(branching, n)


def canonical_listing(count: int) -> list:
    """The first ``count`` sequences of a fixed enumeration of all of ω^<ω.

    Sequences are grouped by weight ``len(s) + sum(s)`` (each group is
    finite), and ordered shortlex inside a group.  This gives s_0 = ⟨⟩ and
    |s_n| <= n for every n.
    """
    out = []
    weight = 0
    while len(out) < count:
        group = []
        for length in range(weight + 1):
            group.extend(_compositions(weight - length, length))
        group.sort(key=shortlex)
        out.extend(group)
        weight += 1
    return out[:count]


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


@dataclass(frozen=True)
class Point:
    """x in ω^ω given by a finite prefix followed by a constant tail."""

    prefix: Seq = ()
    tail: int = 0

    def __post_init__(self):
        prefix = as_seq(self.prefix)
        if isinstance(self.tail, bool) or not isinstance(self.tail, int) or self.tail < 0:
            raise ValidationError(f"tail must be a natural, got {self.tail!r}")
        while prefix and prefix[-1] == self.tail:
            prefix = prefix[:-1]
        object.__setattr__(self, "prefix", prefix)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def restrict(self, n: int) -> Seq:
        """x↾n."""
        return tuple(self[i] for i in range(n))

    def in_cylinder(self, s: Seq) -> bool:
        return all(self[i] == v for i, v in enumerate(s))

    def with_prefix(self, s: Sequence[int]) -> "Point":
        """The point agreeing with s on |s| and with self afterwards."""
        s = tuple(s)
        rest = tuple(self[i] for i in range(len(s), max(len(s), len(self.prefix))))
        return Point(s + rest, self.tail)

    @classmethod
    def of(cls, values: Sequence[int], tail: int = 0) -> "Point":
        return cls(tuple(values), tail)

    def __str__(self):
        return "(" + ",".join(map(str, self.prefix)) + f"|{self.tail}…)"


def window_points(branching: int, depth: int, tails=None) -> list:
    """All points with a prefix in branching^depth and a tail below branching."""
    tails = range(branching) if tails is None else tails
    return [Point(s, t) for s in sequences(branching, depth) for t in tails]


__all__ = [
    "Seq",
    "as_seq",
    "is_prefix",
    "is_proper_prefix",
    "comparable",
    "shortlex",
    "sequences",
    "sequences_upto",
    "canonical_listing",
    "Point",
    "window_points",
]
