"""Command-line front end: one subcommand per library operation, JSON in and out.

Exit status: 0 on success, 1 when an operation rejects its (well-formed)
input, 2 when the input cannot be parsed into the expected objects.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Callable, Dict

from . import codes, hierarchy, perfect, separation, trees
from . import serialize as S
from .errors import DescSetError, MalformedInputError
from .forcing import generic, ranks, sentences
from .ordinals import MINUS_ONE


@contextmanager
def decoding():
    """Anything that goes wrong while turning JSON into objects is malformed input."""
    try:
        yield
    except MalformedInputError:
        raise
    except (DescSetError, KeyError, TypeError, ValueError, AttributeError, IndexError) as exc:
        raise MalformedInputError(f"{type(exc).__name__}: {exc}") from None


def read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(data, key, default=...):
    if isinstance(data, dict) and key in data:
        return data[key]
    if default is ...:
        raise MalformedInputError(f"input lacks field {key!r}")
    return default


def _ord(v):
    return -1 if v is MINUS_ONE else v.to_json()


def _tree_arg(data, key="tree"):
    return S.tree_from_json(data if isinstance(data, list) and key == "tree" else _field(data, key))


# -- handlers: each gets the parsed JSON and the namespace, returns JSON data ----


def cmd_rank(data, args):
    with decoding():
        tree = _tree_arg(data)
    r = trees.rank(tree)
    return {
        "root_rank": r[()].to_json(),
        "ranks": [[list(s), r[s].to_json()] for s in tree],
        "height": trees.height(tree),
    }


def cmd_embed(data, args):
    with decoding():
        a, b = S.tree_from_json(_field(data, "tree")), S.tree_from_json(_field(data, "target"))
        strict = bool(_field(data, "strict", False))
    ok, sigma = trees.embeds(a, b, strict)
    wit = None if sigma is None else [[list(s), list(sigma[s])] for s in a]
    return {"embeds": ok, "strict": strict, "witness": wit}


def cmd_oplus(data, args):
    with decoding():
        a, b = S.tree_from_json(_field(data, "left")), S.tree_from_json(_field(data, "right"))
    t = trees.oplus(a, b)
    return {"tree": t.to_json(), "root_rank": t.root_rank().to_json()}


def cmd_kernel(data, args):
    with decoding():
        t = S.pair_tree_from_json(_field(data, "tree"))
    k, steps = trees.mansfield_kernel(t)
    return {"kernel": k.to_json(), "steps": steps}


def cmd_skeleton(data, args):
    with decoding():
        t = S.pair_tree_from_json(_field(data, "tree"))
        k = S._nat(_field(data, "k"), "k")
    kernel, _ = trees.mansfield_kernel(t)
    sk = trees.perfect_skeleton(kernel, k)
    return {"skeleton": [[list(sig), [list(sk[sig][0]), list(sk[sig][1])]]
                         for sig in sorted(sk, key=lambda s: (len(s), s))]}


def cmd_scale(data, args):
    with decoding():
        tree = S.tree_from_json(_field(data, "tree"))
        x = S.point_from_json(_field(data, "point"))
        n = S._nat(_field(data, "n"), "n")
    tup = trees.scale_tuple(tree, x, n)
    return {"scale": [_ord(v) if i % 2 == 0 else v for i, v in enumerate(tup)]}


def cmd_prank(data, args):
    with decoding():
        tree = S.tree_from_json(_field(data, "tree"))
        count = S._nat(_field(data, "count"), "count")
        bound = _field(data, "bound", None)
        if bound is not None:
            S._nat(bound, "bound")
    out = {"min_bound": trees.partial_rank_min_bound(tree, count)}
    if bound is not None:
        out["functions"] = [list(f) for f in trees.partial_rank_tree(tree, count, bound)]
    return out


def cmd_nft(data, args):
    with decoding():
        table = [(S.seq_from_json(a), S.seq_from_json(b)) for a, b in _field(data, "table")]
        x = S.point_from_json(_field(data, "point"))
        depth = S._nat(_field(data, "depth"), "depth")
    nf = trees.normal_form_tree(table, x, depth)
    return {"rejected": nf.rejected, "tree": sorted([list(s) for s in nf.nodes], key=lambda s: (len(s), s))}


def cmd_leqn(data, args):
    with decoding():
        a, b = S.bintree_from_json(_field(data, "tree")), S.bintree_from_json(_field(data, "other"))
        n = S._nat(_field(data, "n"), "n")
    return {"leq": perfect.leq_n(a, b, n)}


def cmd_fuse(data, args):
    with decoding():
        chain = [S.bintree_from_json(t) for t in _field(data, "chain")]
    return {"fusion": perfect.fuse(chain).to_json()}


def cmd_eval(data, args):
    with decoding():
        code = S.code_from_json(_field(data, "code"))
        pts = [S.point_from_json(p) for p in _field(data, "points", [])]
        if "point" in data:
            pts.insert(0, S.point_from_json(data["point"]))
    return {"values": [codes.eval_code(code, x) for x in pts], "support": codes.support(code)}


def cmd_dual(data, args):
    with decoding():
        code = S.code_from_json(_field(data, "code"))
        w = _field(data, "window", None)
        window = None if w is None else codes.Window(S._nat(w.get("branching", 2), "branching"),
                                                     S._nat(w.get("depth", 0), "depth"))
    return {"code": S.code_to_json(codes.dual(code, window))}


def cmd_encode_field(data, args):
    with decoding():
        ids = [S._id(x) for x in _field(data, "ids")]
        sets = [[S._id(x) for x in a] for a in _field(data, "sets")]
    c, report = codes.encode_field(ids, sets)
    report = dict(report, unseparated=[list(p) for p in report["unseparated"]])
    return {"map": [[x, S.point_to_json(c[x])] for x in ids], "report": report}


def cmd_pair(data, args):
    with decoding():
        if "k" in data:
            k = S._nat(data["k"], "k")
        else:
            n, m = S._nat(_field(data, "n"), "n"), S._nat(_field(data, "m"), "m")
    if "k" in data:
        n, m = codes.unpair(k)
        return {"n": n, "m": m, "index": k}
    return {"n": n, "m": m, "index": codes.pair_index(n, m)}


def _target_from_json(t, level):
    if level == 1:
        if isinstance(t, dict):
            return S.code_from_json(t)
        return [S._nat(i, "basis index") for i in t]
    return [_target_from_json(p, level - 1) for p in t]


def cmd_universal(data, args):
    with decoding():
        level = S._nat(_field(data, "level"), "level")
        basis = [S.basic_from_json(b) for b in _field(data, "basis")]
        depth = S._nat(_field(data, "depth"), "depth")
        width = S._nat(_field(data, "width", 2), "width")
        target = _target_from_json(_field(data, "target"), level) if "target" in data else None
    u = codes.UniversalSet(level, basis, depth, width)
    out = {
        "level": level,
        "param_length": u.param_length,
        "window": {"branching": u.window.branching, "depth": u.window.depth},
        "nodes": u.code.size,
    }
    if target is not None:
        out["param"] = S.point_to_json(u.encode(target))
        out["mismatches"] = [S.point_to_json(y) for y in u.verify(target)]
    if data.get("emit_code"):
        out["code"] = S.code_to_json(u.code)
    return out


def cmd_b2c(data, args):
    with decoding():
        if "cantor" in data:
            y = S.cantor_point_from_json(data["cantor"])
        else:
            x = S.point_from_json(_field(data, "point"))
        digits = S._nat(_field(data, "digits", 0), "digits")
    if "cantor" in data:
        return {"baire": S.point_to_json(codes.cantor_to_baire(y))}
    y = codes.baire_to_cantor(x)
    out = {"cantor": S.point_to_json(y)}
    if digits:
        out["digits"] = "".join(map(str, y.restrict(digits)))
    return out


def cmd_restrict(data, args):
    with decoding():
        t = S.pair_tree_from_json(_field(data, "tree"))
        s, u = S.seq_from_json(_field(data, "s")), S.seq_from_json(_field(data, "t"))
    return {"tree": separation.restrict(t, s, u).to_json()}


def _schemes(data):
    return S.pair_tree_from_json(_field(data, "a")), S.pair_tree_from_json(_field(data, "b"))


def cmd_product(data, args):
    with decoding():
        a, b = _schemes(data)
    tri, alive = separation.product_tree(a, b)
    return {"tree": tri.to_json(), "alive_depth": alive}


def cmd_separate(data, args):
    with decoding():
        a, b = _schemes(data)
        depth = _field(data, "depth", None)
        br = _field(data, "branching", None)
        depth = None if depth is None else S._nat(depth, "depth")
        br = None if br is None else S._nat(br, "branching")
    sep = separation.kleene_separate(a, b, depth, br)
    out = sep.to_json()
    audit = sep.audit()
    out["audit"] = {"ok": audit["ok"], "missed_a": [list(t) for t in audit["missed_a"]],
                    "included_b": [list(t) for t in audit["included_b"]]}
    return out


def cmd_reduce(data, args):
    with decoding():
        a, b = S.tree_from_json(_field(data, "a")), S.tree_from_json(_field(data, "b"))
    side_a, side_b = separation.reduction_conditions(a, b)
    return {"side": separation.reduce_pair(a, b), "condition_a": side_a, "condition_b": side_b}


def _extraction(poset, tr, n):
    tag = poset.tag
    if tag == "silver":
        U, trace = generic.silver_extract(poset, tr, n)
        return {"U": [sorted(u, key=str) for u in U], "trace": sorted(trace, key=str)}
    if tag == "palpha":
        x = generic.palpha_extract(tr)
        return {"map": [[list(s), v] for s, v in sorted(x.items(), key=lambda kv: (len(kv[0]), kv[0]))],
                "audit": [[list(s), v, below, ok] for s, v, below, ok in generic.palpha_audit(poset, tr, n)]}
    if tag == "alpha":
        return {"audit": [[list(s), x, ok] for s, x, ok in generic.alpha_audit(poset, tr)]}
    if tag == "subtree":
        return {"subtree": sorted([list(s) for s in generic.subtree_extract(tr)], key=lambda s: (len(s), s))}
    return {"assignment": sorted([[i, v] for i, v in tr.final.pairs], key=lambda iv: (isinstance(iv[0], str), iv[0]))}


def cmd_force(data, args):
    # shape errors surface as MalformedInputError; the rest are precondition failures
    poset = S.poset_from_json(read_json(args.poset))
    specs = S.specs_from_json(poset, read_json(args.dense))
    tr = generic.rasiowa_sikorski(poset, specs)
    out = S.transcript_to_json(poset, tr)
    if args.extract is not None:
        out["extract"] = _extraction(poset, tr, args.extract)
    return out


def cmd_rank_hat(data, args):
    with decoding():
        poset = S.poset_from_json(_field(data, "poset"))
        p = S.condition_from_json(_field(data, "condition"))
        beta = S.ordinal_from_json(_field(data, "beta"))
        Q = [S._id(x) for x in _field(data, "outside", [])]
    if poset.tag == "alpha":
        h = ranks.alpha_rank_hat(poset, p, beta, Q)
        r = poset.rank(h, Q)
    elif poset.tag == "palpha":
        h = ranks.palpha_rank_hat(poset, p, beta)
        r = poset.rank(h)
    else:
        raise MalformedInputError("rank-hat applies to the alpha and palpha posets")
    return {"condition": S.condition_to_json(h), "rank": r.to_json(), "compatible": poset.compatible(h, p)}


def cmd_pi_eval(data, args):
    with decoding():
        theta = sentences.from_json(_field(data, "sentence"))
        Y = [S._nat(i, "model entry") for i in _field(data, "model")]
    truth, r = sentences.pi_eval(theta, Y)
    return {"truth": truth, "rank": r.to_json()}


def cmd_levels(data, args):
    with decoding():
        ba, C = S.algebra_from_json(data)
    levels, o = hierarchy.hierarchy_levels(ba, C)
    return {
        "levels": [S.algebra_to_json(ba.atoms, lev) for lev in levels],
        "ord": o,
        "generated": sorted(hierarchy.generated_subalgebra(ba, C)),
    }


def cmd_ring_levels(data, args):
    with decoding():
        fam = S.family_from_json(data, "ring" if not args.allow_nonring else "family")
    levels, index, closure = hierarchy.ring_levels(fam, require_ring=not args.allow_nonring)
    u = fam.universe
    return {
        "levels": [hierarchy.sorted_members(u, lev) for lev in levels],
        "index": index,
        "closure": hierarchy.sorted_members(u, closure),
        "final_equals_closure": levels[-1] == closure,
    }


def cmd_quotient(data, args):
    with decoding():
        F = S.family_from_json(_field(data, "field"), "field")
        ideal = S.members_from_json(_field(data, "ideal"))
    q = hierarchy.quotient(F, ideal)
    out = q.to_json()
    out["audit"] = q.audit()
    return out


class VerificationFailed(DescSetError):
    pass


def cmd_verify_transcript(data, args):
    with decoding():
        poset, tr = S.transcript_from_json(data)
    problems = generic.verify_transcript(poset, tr)
    out = {"ok": not problems, "problems": problems, "conditions": len(tr.conditions)}
    if problems:
        raise VerificationFailed(S.dumps(out).strip())
    return out


def cmd_sweep(data, args):
    from . import acceptance

    ids = None if not args.criteria else [int(c) for c in args.criteria.split(",")]
    rows = acceptance.run_suite(ids)
    out = {"suite": args.suite, "results": [r.to_json() for r in rows], "all_passed": all(r.passed for r in rows)}
    if not out["all_passed"]:
        raise VerificationFailed(S.dumps(out).strip())
    return out


COMMANDS: Dict[str, tuple] = {
    "rank": (cmd_rank, "canonical rank of a finite tree"),
    "embed": (cmd_embed, "decide T ⪯ T' (or ≺ with strict) and give a witness"),
    "oplus": (cmd_oplus, "pair tree T0 ⊕ T1"),
    "kernel": (cmd_kernel, "iterate the Mansfield derivative to its kernel"),
    "skeleton": (cmd_skeleton, "perfect skeleton of a pair tree's kernel"),
    "scale": (cmd_scale, "scale tuple ψ_n(x)"),
    "prank": (cmd_prank, "partial rank functions on the first N listed sequences"),
    "nft": (cmd_nft, "normal-form tree T_x from a relation table"),
    "leqn": (cmd_leqn, "the fusion order T ≤_n T'"),
    "fuse": (cmd_fuse, "fusion of a ≤_n chain"),
    "eval": (cmd_eval, "evaluate a Borel code at points"),
    "dual": (cmd_dual, "code for the complement within a window"),
    "encode-field": (cmd_encode_field, "characteristic-function embedding of a field of sets"),
    "pair": (cmd_pair, "pairing ⟨n,m⟩ = 2^n(2m+1)-1 or its inverse"),
    "universal": (cmd_universal, "universal set for a level and a target parameter"),
    "b2c": (cmd_b2c, "Baire to Cantor block encoding and back"),
    "restrict": (cmd_restrict, "restriction T^{s,t} of a pair tree"),
    "product": (cmd_product, "product tree of two schemes"),
    "separate": (cmd_separate, "separator code for two schemes with disjoint projections"),
    "reduce": (cmd_reduce, "pick the side of a pair of trees by embeddings"),
    "force": (cmd_force, "generic-filter run over a list of dense sets"),
    "rank-hat": (cmd_rank_hat, "rank-bounding condition p̂ for the alpha and palpha posets"),
    "pi-eval": (cmd_pi_eval, "truth and rank of a Π_β sentence in a model"),
    "levels": (cmd_levels, "Π levels generated by C in a finite boolean algebra"),
    "ring-levels": (cmd_ring_levels, "alternating union/intersection closure chain of a ring"),
    "quotient": (cmd_quotient, "quotient F/I of a field of sets by an ideal"),
    "verify-transcript": (cmd_verify_transcript, "replay a transcript and check every invariant"),
    "sweep": (cmd_sweep, "run the acceptance matrix"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="descset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        if name == "force":
            p.add_argument("--poset", required=True, help="poset description (JSON file)")
            p.add_argument("--dense", required=True, help="list of dense sets (JSON file)")
            p.add_argument("--extract", type=int, default=None, metavar="N",
                           help="also extract the generic object (N = number of levels or values)")
        elif name == "sweep":
            p.add_argument("--suite", default="acceptance", choices=["acceptance"])
            p.add_argument("--criteria", default="", help="comma-separated criterion numbers")
        else:
            p.add_argument("-i", "--input", default="-", help="input JSON file (default: stdin)")
        if name == "ring-levels":
            p.add_argument("--allow-nonring", action="store_true",
                           help="accept a family that is not yet closed under ∪ and ∩")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable = COMMANDS[args.command][0]
    try:
        data = read_json(args.input) if hasattr(args, "input") else None
        if data is not None and args.command != "rank" and not isinstance(data, dict):
            raise MalformedInputError("input must be a JSON object")
        result = handler(data, args)
    except MalformedInputError as exc:
        print(f"descset {args.command}: malformed input: {exc}", file=sys.stderr)
        return 2
    except VerificationFailed as exc:
        print(str(exc))
        return 1
    except DescSetError as exc:
        print(f"descset {args.command}: {exc}", file=sys.stderr)
        return 1
    text = S.dumps(result)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
