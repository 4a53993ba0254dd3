import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descset import acceptance
from descset.errors import ExtensionError, InsufficientDepthError, ValidationError
from descset.forcing import (
    AlphaCondition,
    AlphaPoset,
    Atom,
    BigAndNeg,
    BSubU,
    FinCondition,
    FinPoset,
    PAlphaPoset,
    PCondition,
    SilverCondition,
    SilverPoset,
    Space,
    SubtreeCondition,
    SubtreePoset,
    XinAll,
    XNotinU,
    alpha_audit,
    alpha_dense,
    alpha_rank,
    alpha_rank_hat,
    antichain_code,
    fin_dense,
    grammar,
    nice_tree,
    palpha_audit,
    palpha_dense,
    palpha_extract,
    palpha_rank,
    palpha_rank_hat,
    pi_eval,
    rasiowa_sikorski,
    satisfies,
    sentence_rank,
    silver_dense,
    silver_extract,
    silver_target_specs,
    subtree_dense,
    subtree_extract,
    verify_transcript,
)
from descset.ordinals import OMEGA, ZERO, nat
from descset.perfect import BinTreeTrunc

SPACE3 = Space(["a", "b", "c"], [{"a"}, {"b"}, {"c"}, {"a", "b"}])
SILVER = SilverPoset(SPACE3)


# -- compatibility ----------------------------------------------------------------


def test_silver_clash():
    p = SilverCondition({XNotinU("a", 0)})
    q = SilverCondition({BSubU(0, 0)})
    assert not SILVER.compatible(p, q)
    assert SILVER.compatible(p, SilverCondition({BSubU(1, 0)}))
    assert not SILVER.compatible(SilverCondition({XinAll("a")}), p)


def test_fin_disjoint_domains():
    P = FinPoset()
    assert P.compatible(FinCondition({(0, 1)}), FinCondition({(1, 0)}))
    assert not P.compatible(FinCondition({(0, 1)}), FinCondition({(0, 0)}))


def test_alpha_parent_child_same_point():
    P = AlphaPoset(nice_tree(3, 2, 3), SPACE3)
    p = AlphaCondition(F={((), "a")})
    assert not P.compatible(p, AlphaCondition(F={((0,), "a")}))
    assert P.compatible(p, AlphaCondition(F={((0,), "b")}))


def test_conditions_of_other_posets_rejected():
    with pytest.raises(ValidationError):
        SILVER.compatible(SilverCondition(), FinCondition())


def test_subtree_end_extension():
    P = SubtreePoset(BinTreeTrunc.full(2))
    q = SubtreeCondition({(), (0,)})
    assert P.leq(SubtreeCondition({(), (0,), (0, 1)}), q)
    assert not P.leq(SubtreeCondition({(), (0,), (1,)}), q)


@settings(deadline=None)
@given(st.integers(0, 2**31))
def test_antichain_code_forces_compatibility(seed):
    """Conditions sharing s_p are compatible, so antichains are bounded by the number of codes."""
    rng = random.Random(seed)
    X = list(range(6))
    space = Space(X, [{x} for x in X] + [{0, 1, 2}, {3, 4}])
    P = SilverPoset(space)
    family = []
    while len(family) < 50:
        sentences = {BSubU(rng.randrange(len(space.basis)), rng.randrange(3)) for _ in range(rng.randint(0, 3))}
        for x in rng.sample(X, rng.randint(0, 3)):
            sentences.add(XinAll(x) if rng.random() < 0.3 else XNotinU(x, rng.randrange(3)))
        p = SilverCondition(sentences)
        if P.is_valid(p):
            family.append(p)
    codes = [tuple(sorted(antichain_code(p).items())) for p in family]
    for i, j in itertools.combinations(range(50), 2):
        if codes[i] == codes[j]:
            assert P.compatible(family[i], family[j])


# -- nice trees -------------------------------------------------------------------


def test_nice_tree_two():
    t = nice_tree(2, 2, 2)
    assert t.ranks[()] == nat(2)
    assert all(t.ranks[(n,)] == nat(1) for n in range(2))
    assert all(t.ranks[(n, m)] == ZERO for n in range(2) for m in range(2))


def test_nice_tree_omega_children():
    t = nice_tree(OMEGA, 3, 2)
    kids = [t.ranks[(n,)] for n in range(3)]
    assert kids[0] >= nat(2)
    assert all(a < b < OMEGA for a, b in zip(kids, kids[1:]))


@pytest.mark.parametrize("alpha", [nat(2), nat(3), OMEGA, OMEGA.succ()])
@pytest.mark.parametrize("branching", [2, 3])
@pytest.mark.parametrize("depth", [1, 2, 3])
def test_nice_tree_self_check(alpha, branching, depth):
    assert nice_tree(alpha, branching, depth).problems() == []


def test_nice_tree_needs_alpha_two():
    with pytest.raises(ValidationError):
        nice_tree(1)


# -- ranks and the rank-bounding constructions-------------------------------------------

TREE3 = nice_tree(3, 2, 3)
ALPHA3 = AlphaPoset(TREE3, SPACE3)


def test_alpha_rank_examples():
    assert alpha_rank(ALPHA3, AlphaCondition()) == ZERO
    assert alpha_rank(ALPHA3, AlphaCondition(F={((), "a")})) == nat(3)
    assert alpha_rank(ALPHA3, AlphaCondition(F={((), "a"), ((1,), "b")}), Q={"a", "b"}) == ZERO


def test_rank_hat_identity_at_rank_zero():
    p = AlphaCondition(t={((0, 0, 0), 1)}, F={((), "a")})
    assert alpha_rank_hat(ALPHA3, p, 1, Q={"a"}) == p


def test_rank_hat_drops_high_pair():
    p = AlphaCondition(F={((), "a")})
    assert alpha_rank_hat(ALPHA3, p, 1).F == frozenset()


def test_alpha_rank_hat_clause_three_small():
    """Brute force on the rank-3 tree: every q of rank < β compatible with p̂ is compatible with p."""
    items = [("t", (s, b)) for s in TREE3.rank_zero() for b in range(4)]
    items += [("F", (s, x)) for s in TREE3.positive() for x in SPACE3.points]

    def cond(combo):
        return AlphaCondition([v for k, v in combo if k == "t"], [v for k, v in combo if k == "F"])

    conds = [c for k in range(3) for combo in itertools.combinations(items, k)
             if ALPHA3.is_valid(c := cond(combo))]
    rng = random.Random(7)
    for beta in (1, 2):
        small = [q for q in conds if ALPHA3.rank(q) < nat(beta)]
        for p in rng.sample(conds, 150):
            h = alpha_rank_hat(ALPHA3, p, beta)
            assert ALPHA3.rank(h) <= nat(beta) and ALPHA3.compatible(h, p)
            for q in small:
                if ALPHA3.compatible(h, q):
                    assert ALPHA3.compatible(p, q)


TREE_W = nice_tree(OMEGA, 2, 3)
PW = PAlphaPoset(TREE_W, 3)


def test_palpha_within_rank_unchanged():
    p = PCondition({((0, 0), 1), ((0, 0, 0), 0)})
    assert palpha_rank(PW, p) <= nat(1)
    assert palpha_rank_hat(PW, p, 1) == p


def test_palpha_limit_clause_copies_root_value():
    p = PCondition({((), 0)})
    h = palpha_rank_hat(PW, p, 3)
    # child ⟨0⟩ has rank 2 < 3, so the root value lands on a grandchild below it
    assert ((0, 0), 0) in h.pairs and ((), 0) not in h.pairs
    assert PW.compatible(h, p) and palpha_rank(PW, h) <= nat(3)


def test_palpha_chain_domain_cut():
    p = PCondition({((0,), 1), ((0, 0), 2)})
    assert palpha_rank(PW, p) == nat(2)
    h = palpha_rank_hat(PW, p, 1)
    assert h == PCondition({((0, 0), 2)})


def test_rank_hat_needs_room():
    shallow = AlphaPoset(nice_tree(OMEGA, 2, 1), SPACE3)
    with pytest.raises(InsufficientDepthError):
        alpha_rank_hat(shallow, AlphaCondition(F={((), "a")}), 2)


def _naive_alpha_hat(P, p, beta, Q=()):
    return AlphaCondition(p.t, frozenset((s, x) for s, x in p.F if x in Q or P.tree.ranks[s] <= beta))


def test_naive_rank_hat_fails_on_omega_tree():
    """Without the grandchild copies, clause 3 breaks at a limit node."""
    P = AlphaPoset(TREE_W, SPACE3)
    p = AlphaCondition(F={((), "a")})
    q = AlphaCondition(F={((0,), "a")})
    assert P.rank(q) < nat(3) and not P.compatible(p, q)
    assert P.compatible(_naive_alpha_hat(P, p, nat(3)), q)
    assert not P.compatible(alpha_rank_hat(P, p, 3), q)


def test_naive_rank_hat_counted_by_enumeration():
    P, conds, index = acceptance._alpha_instance(OMEGA, ())
    rng = random.Random(1)
    naive_bad, _ = acceptance._rank_bound_check(
        P, conds, index, (3,), rank_of=P.rank, hat=lambda p, b: _naive_alpha_hat(P, p, b), rng=rng)
    real_bad, _ = acceptance._rank_bound_check(
        P, conds, index, (3,), rank_of=P.rank, hat=lambda p, b: alpha_rank_hat(P, p, b), rng=rng)
    assert naive_bad > 0 and real_bad == 0


# -- Π_β sentences ----------------------------------------------------------------


def test_pi_examples():
    assert pi_eval(Atom(2), {2}) == (True, ZERO)
    assert pi_eval(BigAndNeg(()), set()) == (True, nat(1))
    assert pi_eval(BigAndNeg((Atom(0),)), {0}) == (False, nat(1))


sentences = st.recursive(
    st.integers(0, 3).map(Atom),
    lambda sub: st.lists(sub, max_size=3).map(lambda ms: BigAndNeg(tuple(ms))),
    max_leaves=6,
)
models = st.sets(st.integers(0, 3))


@given(sentences, models)
def test_double_negation(theta, Y):
    assert satisfies(frozenset(Y), BigAndNeg((BigAndNeg((theta,)),))) == satisfies(frozenset(Y), theta)


@given(sentences)
def test_rank_dominates_members(theta):
    if isinstance(theta, BigAndNeg):
        assert all(sentence_rank(m) < sentence_rank(theta) for m in theta.members)


def test_grammar_ranks_bounded():
    gram = grammar(2, 2)
    assert all(sentence_rank(s) <= 2 for s in gram)
    assert Atom(0) in gram and BigAndNeg(()) in gram


# -- generic filters -------------------------------------------------------------------


def test_no_specs_gives_top():
    t = rasiowa_sikorski(SILVER, [])
    assert t.conditions == [SILVER.top()]


def test_silver_dense_least_extensions():
    t = rasiowa_sikorski(SILVER, [silver_dense("c", "D")])
    assert t.final == SilverCondition({XNotinU("c", 0)})
    t = rasiowa_sikorski(SILVER, [silver_dense("b", "E", 0, space=SPACE3)])
    assert t.final == SilverCondition({BSubU(1, 0)})


def test_met_spec_leaves_condition():
    spec = silver_dense("a", "E", 0, space=SPACE3)
    t = rasiowa_sikorski(SILVER, [spec, spec])
    assert t.conditions[1] == t.conditions[2]


@pytest.mark.parametrize("target", [set(), {"a"}, {"a", "b"}, {"a", "b", "c"}, {"c"}])
def test_silver_recovers_target(target):
    t = rasiowa_sikorski(SILVER, silver_target_specs(SPACE3, target, 3))
    U, trace = silver_extract(SILVER, t, 3)
    assert trace == target
    assert verify_transcript(SILVER, t) == []
    final = t.final
    for s in final.sentences:
        if s.kind == 0:
            assert SPACE3.basis[s.b] <= U[s.n]
        elif s.kind == 1 and s.n < 3:
            assert s.x not in U[s.n]


def test_transcripts_deterministic():
    specs = silver_target_specs(SPACE3, {"a"}, 2)
    a = rasiowa_sikorski(SILVER, specs)
    b = rasiowa_sikorski(SILVER, silver_target_specs(SPACE3, {"a"}, 2))
    assert a.conditions == b.conditions


def test_verify_catches_tampering():
    t = rasiowa_sikorski(SILVER, silver_target_specs(SPACE3, {"a"}, 2))
    t.conditions[2] = SILVER.top()
    assert verify_transcript(SILVER, t)


def test_unsatisfiable_spec_raises():
    P = PAlphaPoset(TREE_W, 2)
    with pytest.raises(ExtensionError):
        rasiowa_sikorski(P, [palpha_dense("E_s", (), 2)])


def test_fin_decides_coordinates():
    t = rasiowa_sikorski(FinPoset(4), [fin_dense(i) for i in range(4)])
    assert t.final.as_dict() == {0: 0, 1: 0, 2: 0, 3: 0}


def test_palpha_root_first():
    t = rasiowa_sikorski(PW, [palpha_dense("D_s", ())])
    assert palpha_extract(t) == {(): 0}
    assert palpha_extract(rasiowa_sikorski(PW, [])) == {}


def test_palpha_children_cover_alphabet():
    P = PAlphaPoset(nice_tree(OMEGA, 3, 2), 3)
    specs = [palpha_dense("D_s", ())] + [palpha_dense("E_s", (), k, 3) for k in range(3)]
    specs += [palpha_dense("D_s", (n,)) for n in range(3)]
    t = rasiowa_sikorski(P, specs)
    x = palpha_extract(t)
    assert {x[()]} | {x[(n,)] for n in range(3)} >= {0, 1, 2}
    assert all(ok for *_, ok in palpha_audit(P, t, 3))


def test_alpha_generic_sections():
    P = AlphaPoset(nice_tree(2, 2, 2), SPACE3)
    specs = [alpha_dense(s, x) for s in ((0,), (1,), ()) for x in SPACE3.points]
    t = rasiowa_sikorski(P, specs)
    audit = alpha_audit(P, t)
    assert audit and all(ok for *_, ok in audit)


def test_subtree_growth():
    P = SubtreePoset(BinTreeTrunc.full(3))
    t = rasiowa_sikorski(P, [subtree_dense(k) for k in range(4)])
    assert subtree_extract(t) == BinTreeTrunc.full(3).nodes
    assert verify_transcript(P, t) == []
