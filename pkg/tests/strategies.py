"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from descset.ordinals import ZERO, OrdinalNotation
from descset.trees import FinTree


def _terms_from(exps, coeffs):
    exps = sorted(set(exps), reverse=True)
    return OrdinalNotation(tuple(zip(exps, coeffs)))


def ordinals(max_depth: int = 2):
    """CNF notations with exponents of bounded nesting."""
    if max_depth == 0:
        return st.integers(0, 6).map(lambda n: OrdinalNotation(((ZERO, n),)) if n else ZERO)
    inner = ordinals(max_depth - 1)
    return st.lists(inner, max_size=3, unique=True).flatmap(
        lambda exps: st.lists(st.integers(1, 4), min_size=len(exps), max_size=len(exps)).map(
            lambda cs: _terms_from(exps, cs)
        )
    )


@st.composite
def fin_trees(draw, max_nodes: int = 12, branching: int = 3):
    """Random finite trees grown one child at a time."""
    nodes = [()]
    for _ in range(draw(st.integers(0, max_nodes - 1))):
        parent = draw(st.sampled_from(nodes))
        child = parent + (draw(st.integers(0, branching - 1)),)
        if child not in nodes:
            nodes.append(child)
    return FinTree(frozenset(nodes))


seqs = st.lists(st.integers(0, 4), max_size=5).map(tuple)
