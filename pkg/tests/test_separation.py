import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descset.codes import eval_code
from descset.errors import ValidationError
from descset.generate import random_disjoint_schemes, random_pair_tree
from descset.seqs import Point, comparable, window_points
from descset.separation import (
    SIDE_A,
    SIDE_B,
    kleene_separate,
    product_tree,
    reduce_pair,
    reduction_conditions,
    restrict,
)
from descset.trees import FinTree, PairTree, root_rank
from strategies import fin_trees


def scheme(*branches):
    """Pair tree generated by full branches (u, t) and their prefixes."""
    nodes = set()
    for u, t in branches:
        nodes.update((tuple(u[:i]), tuple(t[:i])) for i in range(len(u) + 1))
    return PairTree(frozenset(nodes))


def reached(tree: PairTree, depth: int) -> set:
    return {t for u, t in tree.nodes if len(t) == depth}


TEN = scheme(((0, 0, 1), (1, 0, 0)), ((1, 1, 0), (0, 1, 1)), ((0, 1, 1), (0, 0, 1)), ((1, 0), (1, 1)))


# -- sections and products -------------------------------------------------------


def test_restrict_with_empty_constraints():
    assert restrict(TEN, (), ()) == TEN


def test_restrict_on_first_coordinate():
    got = restrict(TEN, (0,), ())
    assert got.nodes == {n for n in TEN.nodes if not n[0][:1] == (1,)}
    assert all(not (u and u[0] == 1) for u, _ in got.nodes)


@settings(deadline=None)
@given(st.integers(0, 2**31), st.lists(st.integers(0, 1), max_size=3), st.lists(st.integers(0, 1), max_size=3))
def test_restrict_idempotent_and_filtering(seed, s, t):
    tree = random_pair_tree(random.Random(seed), 3, 2, 0.6)
    once = restrict(tree, s, t)
    assert restrict(once, s, t) == once
    assert all(comparable(u, tuple(s)) and comparable(v, tuple(t)) for u, v in once.nodes)


def test_product_sharing_a_branch():
    ta = scheme(((0, 0, 0), (1, 1, 1)))
    tb = scheme(((1, 1, 1), (1, 1, 1)))
    assert product_tree(ta, tb)[1] == 3


def test_product_of_opposite_schemes():
    ta = scheme(((0, 0), (0, 0)), ((1, 1), (0, 1)))
    tb = scheme(((0, 0), (1, 0)))
    assert product_tree(ta, tb)[1] == 0


def test_product_with_root_only():
    tri, alive = product_tree(TEN, PairTree.of([((), ())]))
    assert tri.nodes == {((), (), ())} and alive == 0


@settings(deadline=None)
@given(st.integers(0, 2**31))
def test_product_alive_depth_is_common_projection_depth(seed):
    rng = random.Random(seed)
    ta, tb = random_pair_tree(rng, 3, 2, 0.5), random_pair_tree(rng, 3, 2, 0.5)
    _, alive = product_tree(ta, tb)
    common = [d for d in range(4) if reached(ta, d) & reached(tb, d)]
    assert alive == max(common)


# -- Kleene separation ----------------------------------------------------------------


def check_separator(ta, tb, depth, branching):
    sep = kleene_separate(ta, tb, depth=depth, branching=branching)
    for t in reached(ta, depth):
        for j in range(branching):
            assert eval_code(sep.code, Point(t, j))
    for t in reached(tb, depth):
        for j in range(branching):
            assert not eval_code(sep.code, Point(t, j))
    assert sep.audit()["ok"]
    return sep


def test_separate_opposite_first_digits():
    ta = scheme(((0, 0), (0, 0)), ((1, 0), (0, 1)))
    tb = scheme(((0, 1), (1, 1)), ((1, 1), (1, 0)))
    sep = check_separator(ta, tb, 2, 2)
    assert sep.alive_depth == 0


def test_separate_from_empty_projection():
    ta = PairTree.of([((), ())])
    tb = scheme(((0, 1), (1, 1)))
    sep = kleene_separate(ta, tb, depth=2, branching=2)
    assert not any(eval_code(sep.code, x) for x in window_points(2, 2))


def test_separate_against_root_only():
    ta = scheme(((0, 0), (0, 1)), ((1, 1), (1, 0)))
    check_separator(ta, PairTree.of([((), ())]), 2, 2)


def test_overlapping_schemes_refused():
    ta = scheme(((0,), (0,)))
    tb = scheme(((1,), (0,)))
    with pytest.raises(ValidationError):
        kleene_separate(ta, tb, depth=1)


@settings(deadline=None, max_examples=40)
@given(st.integers(0, 2**31), st.sampled_from([2, 3]))
def test_random_disjoint_schemes_separated(seed, branching):
    ta, tb = random_disjoint_schemes(random.Random(seed), 3, branching, branches=3)
    check_separator(ta, tb, 3, branching)


# -- reduction ------------------------------------------------------------------------


def test_reduce_examples():
    assert reduce_pair(FinTree.chain(1), FinTree.chain(2)) == SIDE_A
    assert reduce_pair(FinTree.chain(2), FinTree.full(2, 2)) == SIDE_A
    assert reduce_pair(FinTree.chain(3), FinTree.chain(1)) == SIDE_B


@given(fin_trees(), fin_trees())
def test_reduction_picks_lower_rank(a, b):
    side_a, side_b = reduction_conditions(a, b)
    assert side_a != side_b
    expected = SIDE_A if root_rank(a) <= root_rank(b) else SIDE_B
    assert reduce_pair(a, b) == expected
