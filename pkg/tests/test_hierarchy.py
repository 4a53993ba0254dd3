import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descset.errors import ValidationError
from descset.hierarchy import (
    FieldOfSets,
    FiniteBA,
    generated_subalgebra,
    hierarchy_levels,
    ideal_problems,
    lattice_closure,
    min_ord,
    powerset_field,
    quotient,
    ring_levels,
)

BA2 = FiniteBA(2)


def fs(*xs):
    return frozenset(xs)


# -- Π levels inside a finite algebra -----------------------------------------------


def test_one_atom_in_four_element_algebra():
    levels, order = hierarchy_levels(BA2, {0b01})
    assert levels[1] == {0b11, 0b10}
    assert levels[2] == set(BA2.elements())
    assert order == 2


def test_empty_generators():
    levels, order = hierarchy_levels(BA2, set())
    assert levels[0] == set() and levels[1] == {BA2.one}
    assert order is None


def test_all_atoms_of_eight_element_algebra():
    ba = FiniteBA(3)
    levels, order = hierarchy_levels(ba, {1, 2, 4})
    assert levels[-1] == set(ba.elements()) and order <= 2


def test_foreign_elements_rejected():
    with pytest.raises(ValidationError):
        hierarchy_levels(BA2, {7})


@settings(deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, 2**n - 1), max_size=4))))
def test_fixpoint_is_generated_subalgebra(case):
    atoms, C = case
    ba = FiniteBA(atoms)
    levels, order = hierarchy_levels(ba, C)
    top = levels[-1]
    if C:
        assert top == generated_subalgebra(ba, C)
    assert (order is not None) == (len(top) == ba.size)
    # from level 1 on each level is generated by a larger family than the last
    for a, b in zip(levels[1:], levels[2:]):
        assert a <= b


def test_min_ord_small_algebras():
    assert min_ord(FiniteBA(1))[0] == 0
    o, C = min_ord(BA2)
    assert hierarchy_levels(BA2, C)[1] == o
    with pytest.raises(ValidationError):
        min_ord(FiniteBA(5))


# -- ring closure chains ----------------------------------------------------------------


def test_closed_lattice_has_index_zero():
    R = FieldOfSets("ab", [fs(), fs("a"), fs("b"), fs("a", "b")], "ring")
    levels, index, closure = ring_levels(R)
    assert index == 0 and levels == [R.members]


def test_union_incomplete_family():
    R = FieldOfSets("abc", [fs(), fs("a"), fs("b")], "family")
    levels, index, closure = ring_levels(R, require_ring=False)
    assert levels[1] - levels[0] == {fs("a", "b")}
    assert index == 1 and closure == levels[-1]
    with pytest.raises(ValidationError):
        ring_levels(R)


def random_ring(rng, universe):
    seeds = [frozenset(x for x in universe if rng.random() < 0.5) for _ in range(rng.randint(1, 3))]
    ring = set(seeds)
    while True:
        nxt = ring | {a | b for a in ring for b in ring} | {a - b for a in ring for b in ring}
        if nxt == ring:
            return FieldOfSets(universe, ring, "ring")
        ring = nxt


@given(st.integers(0, 2**31), st.integers(1, 4))
def test_final_level_matches_closure(seed, size):
    rng = random.Random(seed)
    universe = tuple(range(size))
    fam = {frozenset(x for x in universe if rng.random() < 0.5) for _ in range(rng.randint(1, 4))}
    levels, index, closure = ring_levels(FieldOfSets(universe, fam, "family"), require_ring=False)
    assert levels[-1] == closure == lattice_closure(fam)
    assert len(levels) == index + 1
    assert random_ring(rng, universe).validate()


# -- quotients ------------------------------------------------------------------------


def test_trivial_ideal_keeps_field():
    F = powerset_field((0, 1, 2))
    q = quotient(F, [fs()])
    assert q.algebra.atoms == 3 and q.audit() == []


def test_two_element_quotient():
    q = quotient(powerset_field((0, 1)), [fs(), fs(0)])
    assert q.algebra.size == 2 and q.audit() == []
    assert q.map(fs(1)) == q.map(fs(0, 1)) == 1


def test_bad_ideals():
    F = powerset_field((0, 1))
    assert ideal_problems(F, [fs(0)])
    assert ideal_problems(F, [fs(), fs(0), fs(1), fs(0, 1)])
    with pytest.raises(ValidationError):
        quotient(F, [fs(), fs(0), fs(1)])


def test_sixteen_element_field_audit():
    # field of 16 elements over 6 points: atoms {0,1}, {2}, {3}, {4,5}
    atoms = [fs(0, 1), fs(2), fs(3), fs(4, 5)]
    members = {frozenset().union(*c) for k in range(5) for c in combinations(atoms, k)}
    F = FieldOfSets(tuple(range(6)), members, "field").validate()
    assert len(F.members) == 16
    for ideal_atoms in ([], [fs(2)], [fs(2), fs(4, 5)]):
        ideal = {frozenset().union(*c) for k in range(len(ideal_atoms) + 1) for c in combinations(ideal_atoms, k)}
        q = quotient(F, ideal)
        assert q.audit() == []
        assert q.algebra.atoms == 4 - len(ideal_atoms)
