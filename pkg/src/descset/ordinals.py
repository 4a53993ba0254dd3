"""Cantor-normal-form notations for ordinals below epsilon_0.

An ordinal is stored as a tuple of ``(exponent, coefficient)`` terms with
strictly decreasing exponents, where each exponent is itself a notation.
Zero is the empty tuple.  Only the arithmetic rank functions need is
provided: comparison, successor, predecessor, finite suprema and
fundamental sequences for limits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import ValidationError

__all__ = [
    "OrdinalNotation",
    "ZERO",
    "ONE",
    "OMEGA",
    "MINUS_ONE",
    "ord_cmp",
    "ord_rank_sup",
    "nat",
    "omega_power",
    "rank_key",
]


@total_ordering
@dataclass(frozen=True)
class OrdinalNotation:
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        for i, term in enumerate(terms):
            if not (isinstance(term, tuple) and len(term) == 2):
                raise ValidationError(f"term {i} is not an (exponent, coefficient) pair")
            exp, coeff = term
            if not isinstance(exp, OrdinalNotation):
                raise ValidationError(f"term {i} exponent is not a notation")
            if isinstance(coeff, bool) or not isinstance(coeff, int) or coeff < 1:
                raise ValidationError(f"term {i} has coefficient {coeff!r}; must be >= 1")
            if i and _cmp(terms[i - 1][0], exp) <= 0:
                raise ValidationError("exponents must strictly decrease")

    # -- comparison -------------------------------------------------------
    def __lt__(self, other):
        if not isinstance(other, OrdinalNotation):
            return NotImplemented
        return _cmp(self, other) < 0

    # -- classification ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def is_finite(self) -> bool:
        return all(exp.is_zero for exp, _ in self.terms)

    def to_int(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    # -- arithmetic -------------------------------------------------------
    def succ(self) -> "OrdinalNotation":
        if self.is_successor:
            *head, (exp, c) = self.terms
            return OrdinalNotation((*head, (exp, c + 1)))
        return OrdinalNotation((*self.terms, (ZERO, 1)))

    def pred(self) -> "OrdinalNotation":
        if not self.is_successor:
            raise ValueError(f"{self} has no predecessor")
        *head, (exp, c) = self.terms
        if c == 1:
            return OrdinalNotation(tuple(head))
        return OrdinalNotation((*head, (exp, c - 1)))

    def fundamental(self, n: int) -> "OrdinalNotation":
        """The n-th element of the standard fundamental sequence of a limit."""
        if not self.is_limit:
            raise ValueError(f"{self} is not a limit")
        *head, (exp, c) = self.terms
        if c > 1:
            head.append((exp, c - 1))
        if exp.is_successor:
            if n == 0:
                return OrdinalNotation(tuple(head))
            return OrdinalNotation((*head, (exp.pred(), n)))
        return OrdinalNotation((*head, (exp.fundamental(n), 1)))

    # -- display / serialization -----------------------------------------
    def __repr__(self):
        return f"OrdinalNotation({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms:
            if exp.is_zero:
                parts.append(str(c))
                continue
            if exp == ONE:
                base = "w"
            elif exp.is_finite:
                base = f"w^{exp}"
            else:
                base = f"w^({exp})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    def to_json(self) -> list:
        return [[exp.to_json(), c] for exp, c in self.terms]

    @classmethod
    def from_json(cls, data) -> "OrdinalNotation":
        if isinstance(data, bool):
            raise ValidationError("ordinal must be a list or a natural")
        if isinstance(data, int):
            if data < 0:
                raise ValidationError("negative ordinal")
            return nat(data)
        if not isinstance(data, list):
            raise ValidationError("ordinal must be a nested list of [exponent, coefficient]")
        terms = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise ValidationError("each ordinal term must be a 2-element list")
            terms.append((cls.from_json(item[0]), item[1]))
        return cls(tuple(terms))


def _cmp(a: OrdinalNotation, b: OrdinalNotation) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def ord_cmp(a: OrdinalNotation, b: OrdinalNotation) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if not isinstance(a, OrdinalNotation) or not isinstance(b, OrdinalNotation):
        raise ValidationError("ord_cmp expects two OrdinalNotation values")
    return _cmp(a, b)


ZERO = OrdinalNotation(())
ONE = OrdinalNotation(((ZERO, 1),))
OMEGA = OrdinalNotation(((ONE, 1),))


def nat(n: int) -> OrdinalNotation:
    if n < 0:
        raise ValidationError("naturals only")
    return OrdinalNotation(((ZERO, n),)) if n else ZERO


def omega_power(exp: OrdinalNotation, coeff: int = 1) -> OrdinalNotation:
    return OrdinalNotation(((exp, coeff),))


def ord_rank_sup(children: Iterable[OrdinalNotation]) -> OrdinalNotation:
    """sup{c + 1 : c in children}; 0 for no children."""
    best = None
    for c in children:
        if not isinstance(c, OrdinalNotation):
            raise ValidationError(f"not an ordinal notation: {c!r}")
        if best is None or _cmp(c, best) > 0:
            best = c
    return ZERO if best is None else best.succ()


class _MinusOne:
    """Rank of a node absent from a tree; sits below every ordinal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MINUS_ONE"

    def __str__(self):
        return "-1"

    def __reduce__(self):
        return (_MinusOne, ())


MINUS_ONE = _MinusOne()


def rank_key(value):
    """Sort key placing MINUS_ONE below every notation."""
    if value is MINUS_ONE:
        return (0,)
    return (1, value)


def as_ordinal(value) -> OrdinalNotation:
    if isinstance(value, OrdinalNotation):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return nat(value)
    raise ValidationError(f"cannot interpret {value!r} as an ordinal")


def ordinals_max(values: Sequence[OrdinalNotation]) -> OrdinalNotation:
    return max(values, default=ZERO)
