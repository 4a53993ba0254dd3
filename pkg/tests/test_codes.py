import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descset.codes import (
    EMPTY,
    INTERSECTION,
    UNION,
    BorelCode,
    Cyl,
    PeriodicPoint,
    UniversalSet,
    Window,
    baire_to_cantor,
    cantor_to_baire,
    decode_blocks,
    dual,
    encode_blocks,
    encode_field,
    eval_code,
    extension_mask,
    is_alternating,
    leaf_labels,
    pair_index,
    support,
    unpair,
)
from descset.errors import NotRepresentableError, ValidationError
from descset.generate import random_subsets
from descset.seqs import Point, sequences, window_points

LABELS = leaf_labels(2, 2)
WINDOW = Window(2, 3)
POINTS = WINDOW.points()

codes = st.recursive(
    st.sampled_from(LABELS).map(BorelCode.basic),
    lambda sub: st.tuples(st.sampled_from([UNION, INTERSECTION]), st.lists(sub, max_size=3)).map(
        lambda kc: BorelCode.combine(*kc)
    ),
    max_leaves=8,
)
points = st.tuples(st.lists(st.integers(0, 3), max_size=4), st.integers(0, 3)).map(
    lambda pt: Point(tuple(pt[0]), pt[1])
)


def union_of(*cyls):
    return BorelCode.combine(UNION, [BorelCode.basic(Cyl(c)) for c in cyls])


# -- evaluation -----------------------------------------------------------------


def test_single_cylinder():
    assert eval_code(BorelCode.basic(Cyl((1,))), Point((1,), 0))


def test_empty_leaf():
    assert not any(eval_code(BorelCode.basic(EMPTY), x) for x in POINTS)


def test_union_misses_point_starting_two():
    assert not eval_code(union_of((0,), (1,)), Point((2, 5)))


def test_constants():
    assert all(eval_code(BorelCode.constant(True), x) for x in POINTS)
    assert not any(eval_code(BorelCode.constant(False), x) for x in POINTS)


def test_labels_must_partition_nodes():
    from descset.trees import FinTree

    with pytest.raises(ValidationError):
        BorelCode(FinTree.of((0,)), {(): UNION}, {})
    with pytest.raises(ValidationError):
        BorelCode(FinTree.of((0,)), {(): "xor"}, {(0,): EMPTY})
    with pytest.raises(ValidationError):
        BorelCode(FinTree.of((0,)), {(): UNION, (0,): UNION}, {(0,): EMPTY})


@given(codes)
def test_mask_matches_pointwise_eval(code):
    mask = extension_mask(code, POINTS)
    assert mask == sum(1 << i for i, x in enumerate(POINTS) if eval_code(code, x))


@given(codes, points)
def test_eval_depends_only_on_support(code, x):
    k = support(code)
    y = Point(x.restrict(k), (x[k] + 1) % 4)
    assert eval_code(code, x) == eval_code(code, y)


# -- duality --------------------------------------------------------------------


@given(codes)
def test_dual_complements_on_window(code):
    d = dual(code, WINDOW)
    full = (1 << len(POINTS)) - 1
    assert extension_mask(d, POINTS) == full ^ extension_mask(code, POINTS)


@given(codes)
def test_double_dual_is_identity_on_window(code):
    dd = dual(dual(code, WINDOW), WINDOW)
    assert extension_mask(dd, POINTS) == extension_mask(code, POINTS)


def test_dual_of_empty_is_everything():
    d = dual(BorelCode.basic(EMPTY), WINDOW)
    assert all(eval_code(d, x) for x in POINTS)


def test_dual_of_union_excludes_inside_point():
    assert not eval_code(dual(union_of((0,), (1,)), Window(2, 2)), Point((0, 1)))


def test_dual_needs_window_for_leaves():
    with pytest.raises(ValidationError):
        dual(BorelCode.basic(Cyl((0,))))
    assert dual(BorelCode.constant(True)).kind == {(): UNION}


def test_alternation():
    assert is_alternating(union_of((0,), (1,)))
    nested = BorelCode.combine(UNION, [union_of((0,))])
    assert not is_alternating(nested)


# -- fields of sets ---------------------------------------------------------------


def test_encode_field_example():
    c, report = encode_field(["a", "b"], [["a"]])
    assert c["a"] == Point((1,), 0) and c["b"] == Point((), 0)
    assert report["traces_match"] and report["injective"]


def test_encode_field_trivial_family():
    c, report = encode_field(["a", "b"], [["a", "b"]])
    assert c["a"] == c["b"] and not report["injective"]
    assert report["unseparated"] == [("a", "b")]


@given(st.integers(0, 2**31))
def test_encode_field_traces(seed):
    ids = list("vwxyz")
    fam = random_subsets(random.Random(seed), ids, 4)
    c, report = encode_field(ids, fam)
    assert report["traces_match"]
    for n, a in enumerate(fam):
        assert {x for x in ids if c[x][n] == 1} == set(a)
    separated = all(any((x in a) != (y in a) for a in fam) for i, x in enumerate(ids) for y in ids[i + 1:])
    assert report["injective"] == separated


# -- pairing ---------------------------------------------------------------------


def test_pairing_examples():
    assert [pair_index(0, 0), pair_index(1, 0), pair_index(0, 1)] == [0, 1, 2]


def test_pairing_roundtrip_grid():
    for n in range(16):
        for m in range(16):
            assert unpair(pair_index(n, m)) == (n, m)


@given(st.integers(0, 10**6))
def test_unpair_inverts(k):
    assert pair_index(*unpair(k)) == k


# -- universal sets -----------------------------------------------------------------


BASIS = [EMPTY, Cyl((0,)), Cyl((1,))]


def test_universal_level_one_cylinder():
    U = UniversalSet(1, BASIS, 1)
    target = BorelCode.basic(Cyl((0,)))
    x = U.encode(target)
    assert U.verify(target) == []
    for y in window_points(2, 1):
        assert U.section(x, y) == y.in_cylinder((0,))


def test_universal_empty_target():
    U = UniversalSet(1, BASIS, 1)
    x = U.encode(BorelCode.basic(EMPTY))
    assert set(x.prefix) <= {0} and x.tail == 0
    assert not any(U.section(x, y) for y in window_points(2, 1))


def test_universal_diagonal():
    U = UniversalSet(2, BASIS, 2)
    for x in window_points(2, 3):
        assert U.diagonal(x) == eval_code(U.code, U.pair(x, x))


@pytest.mark.parametrize("target", [[{1}], [{1}, {2}], [set(), {1, 2}]])
def test_universal_level_two(target):
    U = UniversalSet(2, BASIS, 2)
    assert U.verify(target) == []


def test_universal_rejects_bad_targets():
    U = UniversalSet(1, BASIS, 1)
    with pytest.raises(NotRepresentableError):
        U.encode(BorelCode.basic(Cyl((0, 0))))
    with pytest.raises(NotRepresentableError):
        UniversalSet(4, BASIS, 2, max_nodes=100)


# -- Baire to Cantor ----------------------------------------------------------------


def test_b2c_example():
    assert baire_to_cantor(Point((2, 0, 1))).restrict(6) == (0, 0, 1, 1, 0, 1)


def test_b2c_zero_point():
    assert baire_to_cantor(Point(())).restrict(8) == (1,) * 8


def test_b2c_roundtrip_exhaustive():
    seen = {}
    for length in range(5):
        for s in sequences(4, length):
            for tail in range(3):
                f = Point(s, tail)
                img = baire_to_cantor(f)
                assert cantor_to_baire(img) == f
                key = img.restrict(40)
                assert seen.setdefault(key, f) == f


def test_b2c_nonzero_tail_is_periodic():
    img = baire_to_cantor(Point((1,), 2))
    assert isinstance(img, PeriodicPoint) and img.restrict(7) == (0, 1, 0, 0, 1, 0, 0)


def test_zero_tail_outside_image():
    with pytest.raises(NotRepresentableError):
        cantor_to_baire(Point((1,), 0))


@given(st.lists(st.integers(0, 6), max_size=8))
def test_blocks_roundtrip(s):
    assert decode_blocks(encode_blocks(s)) == (tuple(s), 0)


@settings(deadline=None)
@given(st.lists(st.integers(0, 5), max_size=6), st.integers(0, 4))
def test_b2c_prefix_determined(prefix, tail):
    """The first k output bits depend only on a finite input prefix."""
    f = Point(tuple(prefix), tail)
    img = baire_to_cantor(f)
    bits = img.restrict(sum(prefix) + len(prefix))
    assert bits == encode_blocks(f.restrict(len(prefix)))
