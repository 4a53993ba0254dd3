import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descset.errors import InsufficientDepthError, ValidationError
from descset.perfect import BinTreeTrunc, fuse, leq_n, splitting_node, splitting_nodes

FULL3 = BinTreeTrunc.full(3)


def prune(tree: BinTreeTrunc, removed) -> BinTreeTrunc:
    """Drop the given nodes and everything above them."""
    keep = {s for s in tree.nodes if not any(s[: len(r)] == r for r in removed)}
    return BinTreeTrunc(frozenset(keep), tree.depth)


@st.composite
def shrinkings(draw, tree: BinTreeTrunc):
    """A perfect subtruncation obtained by cutting one side of some splits."""
    nodes = set(tree.nodes)
    for s in sorted(tree.nodes, key=len):
        if s in nodes and tree.is_splitting(s) and draw(st.integers(0, 3)) == 0:
            side = draw(st.integers(0, 1))
            nodes = {u for u in nodes if u[: len(s) + 1] != s + (side,)}
    return BinTreeTrunc(frozenset(nodes), tree.depth)


def test_reflexive():
    for n in range(4):
        assert leq_n(FULL3, FULL3, n)


def test_cut_above_level_two_keeps_root_split():
    t = prune(FULL3, [(1, 1, 1)])
    assert leq_n(t, FULL3, 1) and leq_n(t, FULL3, 2)
    assert not leq_n(t, FULL3, 3)


def test_second_level_split_removed():
    t = prune(FULL3, [(1, 1)])
    assert leq_n(t, FULL3, 1)
    assert not leq_n(t, FULL3, 2)


def test_not_a_subset():
    assert not leq_n(FULL3, prune(FULL3, [(0,)]), 0)


def test_splitting_node_indexing():
    t = prune(FULL3, [(1,)])
    assert splitting_node(t, ()) == (0,)
    assert splitting_node(t, (1,)) == (0, 1)
    with pytest.raises(InsufficientDepthError):
        splitting_nodes(t, 3)


def test_not_perfect_rejected():
    with pytest.raises(ValidationError):
        BinTreeTrunc(frozenset({(), (0,)}), 2)


def test_fuse_constant_chain():
    assert fuse([FULL3] * 3) == FULL3


def test_fuse_shrinking_chain():
    t1 = prune(FULL3, [(1, 1, 1)])
    t2 = prune(t1, [(0, 0, 0)])
    fused = fuse([FULL3, t1, t2])
    assert fused == t2
    for i, t in enumerate([FULL3, t1, t2]):
        assert leq_n(fused, t, i)


def test_fuse_empty_chain():
    with pytest.raises(ValidationError):
        fuse([])


def test_fuse_rejects_broken_chain():
    with pytest.raises(ValidationError):
        # ≤_1 demands the root split, which the last tree has lost
        fuse([FULL3, FULL3, prune(FULL3, [(1,)])])


@settings(deadline=None)
@given(st.data())
def test_fusion_is_below_every_element(data):
    chain = [BinTreeTrunc.full(4)]
    for i in range(3):
        nxt = data.draw(shrinkings(chain[-1]))
        try:
            ok = leq_n(nxt, chain[-1], i)
        except InsufficientDepthError:
            ok = False
        if not ok:
            break
        chain.append(nxt)
    fused = fuse(chain)
    for t in chain:
        assert fused.nodes <= t.nodes
    # a finite chain only pins the splits promised by its links
    for i, t in enumerate(chain[:-1]):
        assert leq_n(fused, t, i)
