"""The acceptance matrix: fourteen property checks, each with an independent oracle.

Every criterion is a function returning a :class:`Result`.  ``run_suite``
runs a selection in numeric order; the ``sweep`` subcommand and
``tests/test_acceptance.py`` both go through it.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import subprocess
import sys
import time
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Dict, List, Optional

from . import codes, generate, hierarchy, separation, trees
from .codes import INTERSECTION, UNION, BorelCode, Window
from .errors import InsufficientDepthError
from .forcing import generic, posets, ranks, sentences
from .forcing.nice import nice_tree
from .ordinals import OMEGA, nat
from .perfect import BinTreeTrunc
from .seqs import Point, comparable

FIXTURES = Path(__file__).parent / "data" / "cli"


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:>2}: {self.title} -- {self.detail} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        # no timings: the JSON form must be reproducible byte for byte
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


CRITERIA: Dict[int, Callable[[], Result]] = {}


def criterion(number: int, title: str):
    def wrap(fn):
        def run() -> Result:
            t0 = time.perf_counter()
            passed, detail = fn()
            return Result(number, title, passed, detail, time.perf_counter() - t0)

        CRITERIA[number] = run
        run.__doc__ = fn.__doc__
        run.__name__ = fn.__name__
        return run

    return wrap


# -- 1-3, 12: ranks and embeddings ------------------------------------------------


def descendant_height(tree) -> dict:
    """Longest path below each node, found by scanning all descendants."""
    nodes = list(tree.nodes)
    return {s: max(len(t) - len(s) for t in nodes if t[: len(s)] == s) for s in nodes}


@criterion(1, "rank equals height oracle")
def crit_rank_oracle():
    rng = random.Random(101)
    bad = nodes = 0
    for _ in range(1000):
        t = generate.random_tree(rng, 100, branching=rng.choice((2, 3, 4)))
        r = trees.rank(t)
        h = descendant_height(t)
        nodes += len(h)
        bad += sum(r[s].to_int() != h[s] for s in h)
    return bad == 0, f"1000 trees, {nodes} nodes, {bad} mismatches"


def _embedding_case(a, b) -> int:
    ra, rb = trees.root_rank(a), trees.root_rank(b)
    bad = 0
    for strict, expect in ((False, ra <= rb), (True, ra < rb)):
        ok, sigma = trees.embeds(a, b, strict)
        if ok != expect or (ok and not trees.is_embedding(a, b, sigma, strict)):
            bad += 1
    return bad


@criterion(2, "embedding iff rank comparison")
def crit_embedding():
    small = list(generate.all_trees(6))
    bad = pairs = 0
    for a in small:
        for b in small:
            bad += _embedding_case(a, b)
            pairs += 1
    rng = random.Random(202)
    for _ in range(500):
        a, b = generate.random_tree(rng, 25), generate.random_tree(rng, 25)
        bad += _embedding_case(a, b)
        pairs += 1
    return bad == 0, f"{pairs} pairs ({len(small)}^2 exhaustive + 500 random), {bad} mismatches"


@criterion(3, "oplus root rank is the minimum")
def crit_oplus():
    rng = random.Random(303)
    bad = 0
    for _ in range(500):
        a, b = generate.random_tree(rng, 30), generate.random_tree(rng, 30)
        got = trees.oplus(a, b).root_rank()
        want = min(descendant_height(a)[()], descendant_height(b)[()])
        bad += got.to_int() != want
    return bad == 0, f"500 pairs, {bad} mismatches"


@criterion(12, "reduction picks the lower rank")
def crit_reduction():
    small = list(generate.all_trees(6))
    bad = 0
    for a in small:
        ha = descendant_height(a)[()]
        for b in small:
            hb = descendant_height(b)[()]
            side_a, side_b = separation.reduction_conditions(a, b)
            want = separation.SIDE_A if ha <= hb else separation.SIDE_B
            bad += side_a == side_b or separation.reduce_pair(a, b) != want
    return bad == 0, f"{len(small) ** 2} pairs, {bad} mismatches"


# -- 4: separation -------------------------------------------------------------------


@criterion(4, "Kleene separation of disjoint schemes")
def crit_separation():
    rng = random.Random(404)
    bad = 0
    witnesses = 0
    for i in range(200):
        b = 2 if i % 2 == 0 else 3
        ta, tb = generate.random_disjoint_schemes(rng, 4, b, branches=rng.randint(2, 5))
        sep = separation.kleene_separate(ta, tb, depth=4, branching=b)
        audit = sep.audit()
        witnesses += len(sep.witnesses_a) + len(sep.witnesses_b)
        bad += not audit["ok"]
    return bad == 0, f"200 pairs, {witnesses} witnesses, {bad} failing separators"


# -- 5-7: forcing ---------------------------------------------------------------------


@criterion(5, "Silver generic recovers every target")
def crit_silver():
    X = ["a", "b", "c", "d", "e"]
    basis = [{x} for x in X] + [{"a", "b"}, {"c", "d", "e"}, {"b", "d"}]
    space = posets.Space(X, basis)
    P = posets.SilverPoset(space)
    bad = runs = 0
    for k in range(len(X) + 1):
        for A in itertools.combinations(X, k):
            tr = generic.rasiowa_sikorski(P, generic.silver_target_specs(space, A, 3))
            _, trace = generic.silver_extract(P, tr, 3)
            bad += trace != set(A) or bool(generic.verify_transcript(P, tr))
            runs += 1
    return bad == 0, f"{runs} targets, {bad} wrong traces"


class PairwiseIndex:
    """Fast compatibility for posets whose validity is a pairwise condition on items.

    Item conflicts are decided once with the poset's own ``compatible``;
    two conditions are then compatible iff no item of one conflicts with
    an item of the other.
    """

    def __init__(self, poset, items, single: Callable, explode: Callable):
        self.poset, self.items, self.explode = poset, items, explode
        self.pos = {it: i for i, it in enumerate(items)}
        singles = [single(it) for it in items]
        self.conf = [
            sum(1 << j for j, d in enumerate(singles) if not poset.compatible(c, d))
            for c in singles
        ]

    def bits(self, p) -> int:
        return sum(1 << self.pos[it] for it in self.explode(p))

    def conflicts(self, p) -> int:
        out = 0
        for it in self.explode(p):
            out |= self.conf[self.pos[it]]
        return out


def _rank_bound_check(poset, conditions, index, betas, rank_of, hat, rng):
    bad = checks = 0
    info = [(p, index.bits(p)) for p in conditions]
    for beta in betas:
        b = nat(beta)
        small = [(q, bits) for q, bits in info if rank_of(q) < b]
        for p, pbits in info:
            try:
                h = hat(p, b)
            except InsufficientDepthError:
                bad += 1
                continue
            if not poset.compatible(h, p) or rank_of(h) > b:
                bad += 1
            hconf, pconf = index.conflicts(h), index.conflicts(p)
            for q, qbits in small:
                checks += 1
                if not hconf & qbits and pconf & qbits:
                    bad += 1
    # the bitmask shortcut must agree with the poset on a sample of pairs
    for _ in range(3000):
        p, q = rng.choice(conditions), rng.choice(conditions)
        fast = not (index.conflicts(p) & index.bits(q))
        bad += fast != poset.compatible(p, q)
    return bad, checks


def _conditions_upto2(poset, items, single_join):
    out = []
    for k in range(3):
        for combo in itertools.combinations(items, k):
            c = single_join(combo)
            if poset.is_valid(c):
                out.append(c)
    return out


def _alpha_instance(alpha, Q):
    tree = nice_tree(alpha, 2, 3)
    space = posets.Space([0, 1, 2], [{0}, {1}, {2}, {0, 1}])
    P = posets.AlphaPoset(tree, space)
    items = [("t", (s, b)) for s in tree.rank_zero() for b in range(len(space.basis))]
    items += [("F", (s, x)) for s in tree.positive() for x in space.points]

    def join(combo):
        return posets.AlphaCondition([v for k, v in combo if k == "t"], [v for k, v in combo if k == "F"])

    def explode(p):
        return [("t", e) for e in p.t] + [("F", e) for e in p.F]

    index = PairwiseIndex(P, items, lambda it: join([it]), explode)
    conds = _conditions_upto2(P, items, join)
    return P, conds, index


def _palpha_instance():
    tree = nice_tree(OMEGA, 2, 3)
    P = posets.PAlphaPoset(tree, 3)
    items = [(s, v) for s in tree.nodes() for v in range(3)]

    def join(combo):
        return posets.PCondition(combo)

    index = PairwiseIndex(P, items, lambda it: join([it]), lambda p: list(p.pairs))
    return P, _conditions_upto2(P, items, join), index


@criterion(6, "rank-bounding condition clauses by enumeration")
def crit_rank_bound():
    rng = random.Random(606)
    bad = checks = 0
    parts = []
    for alpha, Q in ((nat(3), ()), (nat(3), (0,)), (OMEGA, ()), (OMEGA, (1,))):
        P, conds, index = _alpha_instance(alpha, Q)
        betas = (1, 2) if alpha == nat(3) else (1, 2, 3)
        b, c = _rank_bound_check(
            P, conds, index, betas,
            rank_of=lambda p, P=P, Q=Q: P.rank(p, Q),
            hat=lambda p, beta, P=P, Q=Q: ranks.alpha_rank_hat(P, p, beta, Q),
            rng=rng,
        )
        bad, checks = bad + b, checks + c
        parts.append(f"alpha={alpha} Q={list(Q)}: {len(conds)} conditions")
    P, conds, index = _palpha_instance()
    b, c = _rank_bound_check(P, conds, index, (1, 2, 3), rank_of=P.rank,
                             hat=lambda p, beta: ranks.palpha_rank_hat(P, p, beta), rng=rng)
    bad, checks = bad + b, checks + c
    parts.append(f"P_alpha(w): {len(conds)} conditions")
    return bad == 0, f"{'; '.join(parts)}; {checks} clause-3 checks, {bad} failures"


def truth_table(theta, kappa: int) -> int:
    """Bitmask over the 2^kappa models (model Y is bit Y read as a subset mask)."""
    full = (1 << (1 << kappa)) - 1
    if isinstance(theta, sentences.Atom):
        return sum(1 << y for y in range(1 << kappa) if y >> theta.index & 1)
    acc = full
    for m in theta.members:
        acc &= full & ~truth_table(m, kappa)
    return acc


@criterion(7, "Pi_beta evaluation and rank dominance")
def crit_pi_sentences():
    kappa = 4
    grammar = sentences.grammar(kappa, 3, 2)
    bad = 0
    tables: dict = {}
    for theta in grammar:
        table = tables.get(theta)
        if table is None:
            table = tables[theta] = truth_table(theta, kappa)
        for y in range(1 << kappa):
            Y = {i for i in range(kappa) if y >> i & 1}
            truth, _ = sentences.pi_eval(theta, Y)
            bad += truth != bool(table >> y & 1)
        if isinstance(theta, sentences.BigAndNeg):
            r = sentences.sentence_rank(theta)
            bad += any(sentences.sentence_rank(m) >= r for m in theta.members)
    return bad == 0, f"{len(grammar)} sentences x 16 models, {bad} failures"


# -- 8: hierarchy ------------------------------------------------------------------------


@criterion(8, "hierarchy fixpoint is the generated subalgebra")
def crit_hierarchy():
    bad = cases = 0
    for atoms in range(5):
        ba = hierarchy.FiniteBA(atoms)
        for mask in range(1 << ba.size):
            C = [e for e in ba.elements() if mask >> e & 1]
            levels, _ = hierarchy.hierarchy_levels(ba, C)
            bad += levels[-1] != hierarchy.generated_subalgebra(ba, C)
            cases += 1
    _, o = hierarchy.hierarchy_levels(hierarchy.FiniteBA(2), [0b01])
    ok = bad == 0 and o == 2
    return ok, f"{cases} (algebra, C) cases, {bad} mismatches; one-atom example ord = {o}"


# -- 9-11, 13: codes and skeletons ------------------------------------------------------------


def _small_codes(labels):
    """Codes of height ≤ 2 whose internal nodes have at most two children (unordered)."""
    terms = [BorelCode.basic(b) for b in labels] + [BorelCode.constant(True), BorelCode.constant(False)]

    def above(base):
        out = list(base)
        for kind in (UNION, INTERSECTION):
            out += [BorelCode.combine(kind, [c]) for c in base]
            out += [BorelCode.combine(kind, [a, b]) for a, b in itertools.combinations_with_replacement(base, 2)]
        return out

    return above(above(terms))


def _locality_classes(points, depth):
    """For each support length k, groups of point indices agreeing below k."""
    out = {}
    for k in range(depth + 1):
        groups: dict = {}
        for i, x in enumerate(points):
            groups.setdefault(x.restrict(k), []).append(i)
        out[k] = [sum(1 << i for i in g) for g in groups.values()]
    return out


def _duality_failures(code, window, points, cache, classes) -> int:
    full = (1 << len(points)) - 1
    m = codes.extension_mask(code, points, cache)
    d = codes.extension_mask(codes.dual(code, window), points, cache)
    bad = d != full & ~m
    for g in classes[codes.support(code)]:
        bad += (m & g) not in (0, g)
    return bad


def _random_code(rng, labels, height):
    if height == 0 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return BorelCode.constant(rng.random() < 0.5)
        return BorelCode.basic(rng.choice(labels))
    kids = [_random_code(rng, labels, height - 1) for _ in range(rng.randint(0, 3))]
    return BorelCode.combine(rng.choice((UNION, INTERSECTION)), kids)


@criterion(9, "code duality and support locality")
def crit_duality():
    labels = codes.leaf_labels(2, 3)
    window = Window(2, 3)
    points = window.points()
    cache: dict = {}
    classes = _locality_classes(points, 3)
    bad = n = 0
    for c in _small_codes(labels):
        bad += _duality_failures(c, window, points, cache, classes)
        n += 1
    rng = random.Random(909)
    sampled = 0
    while sampled < 20000:
        c = _random_code(rng, labels, 3)
        if c.size > 10:
            continue
        bad += _duality_failures(c, window, points, cache, classes)
        sampled += 1
    return bad == 0, (f"{n} codes of height <= 2 (exhaustive, unordered children) + {sampled} random "
                      f"codes of height <= 3 with <= 10 nodes, on {len(points)} window points; {bad} failures")


@criterion(10, "pairing is a bijection")
def crit_pairing():
    seen = {}
    bad = 0
    for n in range(100):
        for m in range(100):
            k = codes.pair_index(n, m)
            bad += k in seen or codes.unpair(k) != (n, m) or k != 2 ** n * (2 * m + 1) - 1
            seen[k] = (n, m)
    values = (codes.pair_index(0, 0), codes.pair_index(1, 0), codes.pair_index(0, 1))
    ok = bad == 0 and len(seen) == 10000 and values == (0, 1, 2)
    return ok, f"10000 pairs, {bad} failures; (0,0),(1,0),(0,1) -> {values}"


def _perfect_truncations(depth):
    def grow(prefix, rem):
        if rem == 0:
            yield frozenset({prefix})
            return
        for opts in ((0,), (1,), (0, 1)):
            for combo in itertools.product(*(list(grow(prefix + (o,), rem - 1)) for o in opts)):
                yield frozenset({prefix}).union(*combo)

    return list(grow((), depth))


def _skeleton_capacity(kernel) -> int:
    """Largest k such that some 2^{≤k} system of incompatible splits exists (brute force)."""
    nodes = sorted(kernel.nodes, key=lambda n: (len(n[0]), n))

    @lru_cache(maxsize=None)
    def cap(n):
        ext = [m for m in nodes if m[0][: len(n[0])] == n[0] and m[1][: len(n[1])] == n[1]]
        best = 0
        for a in ext:
            for b in ext:
                if not comparable(a[1], b[1]):
                    best = max(best, 1 + min(cap(a), cap(b)))
        return best

    return cap(((), ()))


@criterion(11, "perfect skeleton leaves are incompatible")
def crit_skeleton():
    rng = random.Random(1111)
    bad = cases = built = 0
    for depth in range(4):
        for nodes in _perfect_truncations(depth):
            BinTreeTrunc(nodes, depth)
            for variant in range(2):
                firsts = {(): ()}
                for s in sorted(nodes, key=len)[1:]:
                    firsts[s] = s if variant == 0 else firsts[s[:-1]] + (rng.randrange(2),)
                kernel, _ = trees.mansfield_kernel(trees.PairTree(frozenset((firsts[s], s) for s in nodes), depth))
                capacity = _skeleton_capacity(kernel) if kernel.nodes else -1
                for k in range(4):
                    cases += 1
                    try:
                        sk = trees.perfect_skeleton(kernel, k)
                    except InsufficientDepthError:
                        bad += capacity >= k
                        continue
                    built += 1
                    leaves = [sk[s] for s in sk if len(s) == k]
                    ok = len(leaves) == 2 ** k and all(
                        not comparable(a[1], b[1]) for a, b in itertools.combinations(leaves, 2))
                    ok = ok and all(
                        sk[s][0][: len(sk[s[:-1]][0])] == sk[s[:-1]][0]
                        and sk[s][1][: len(sk[s[:-1]][1])] == sk[s[:-1]][1]
                        for s in sk if s)
                    bad += not ok
    return bad == 0, f"{cases} (kernel, k) cases, {built} skeletons built, {bad} failures"


@criterion(13, "Baire to Cantor encoding")
def crit_baire_cantor():
    images = {}
    bad = 0
    for n in range(5):
        for s in itertools.product(range(4), repeat=n):
            for tail in range(4):
                x = Point(s, tail)
                y = codes.baire_to_cantor(x)
                key = (type(y).__name__, y.prefix, getattr(y, "cycle", None), getattr(y, "tail", None))
                if key in images and images[key] != x:
                    bad += 1
                images[key] = x
                bad += codes.cantor_to_baire(y) != x
    digits = "".join(map(str, codes.baire_to_cantor(Point((2, 0, 1), 0)).restrict(6)))
    ok = bad == 0 and digits == "001101"
    return ok, f"{len(images)} distinct points, {bad} failures; (2,0,1) -> {digits}"


# -- 14: command line ---------------------------------------------------------------------------


def _run_cli(args, seed: str):
    env = dict(os.environ, PYTHONHASHSEED=seed)
    src = str(Path(__file__).resolve().parent.parent)
    env["PYTHONPATH"] = src + os.pathsep + env.get("PYTHONPATH", "")
    proc = subprocess.run([sys.executable, "-m", "descset.cli", *args], capture_output=True,
                          text=True, env=env, cwd=str(FIXTURES), timeout=120)
    return proc.returncode, proc.stdout


def load_manifest() -> List[dict]:
    with open(FIXTURES / "manifest.json", encoding="utf-8") as fh:
        return json.load(fh)


@criterion(14, "CLI golden files and exit codes")
def crit_cli():
    cases = load_manifest()
    bad = []
    for case in cases:
        runs = [_run_cli(case["args"], seed) for seed in ("0", "12345")]
        if runs[0] != runs[1]:
            bad.append(f"{case['name']}: differs between runs")
            continue
        code, out = runs[0]
        if code != case["exit"]:
            bad.append(f"{case['name']}: exit {code}, expected {case['exit']}")
            continue
        golden = FIXTURES / f"{case['name']}.out"
        if golden.exists() and golden.read_text(encoding="utf-8") != out:
            bad.append(f"{case['name']}: output differs from golden file")
    golden_count = sum((FIXTURES / f"{c['name']}.out").exists() for c in cases)
    detail = f"{len(cases)} invocations ({golden_count} golden), {len(bad)} failures"
    if bad:
        detail += ": " + "; ".join(bad[:3])
    return not bad, detail


def run_suite(numbers: Optional[List[int]] = None) -> List[Result]:
    chosen = sorted(CRITERIA) if not numbers else sorted(numbers)
    return [CRITERIA[n]() for n in chosen]


def main() -> int:
    rows = run_suite([int(a) for a in sys.argv[1:]] or None)
    for r in rows:
        print(r.line())
    return 0 if all(r.passed for r in rows) else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


__all__ = ["Result", "CRITERIA", "run_suite", "truth_table", "descendant_height"]
