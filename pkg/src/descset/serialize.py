"""JSON encodings for every domain object.

Decoders raise :class:`MalformedInputError` when the data has the wrong
shape and let the constructors raise :class:`ValidationError` when the
shape is right but an invariant fails.
"""

from __future__ import annotations

import json
from typing import Any

from .codes import EMPTY, BasicClopen, BorelCode, Cyl, PeriodicPoint
from .errors import MalformedInputError
from .forcing import posets as fp
from .forcing.generic import DenseSpec, Transcript, spec_from_json
from .forcing.nice import nice_tree
from .hierarchy import FieldOfSets, FiniteBA
from .ordinals import OMEGA, OrdinalNotation
from .perfect import BinTreeTrunc
from .seqs import Point
from .trees import FinTree, PairTree


def dumps(obj: Any) -> str:
    """Canonical text: sorted keys, UTF-8, one trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n"


def _need(data, key, kind=None):
    if not isinstance(data, dict) or key not in data:
        raise MalformedInputError(f"expected an object with field {key!r}")
    value = data[key]
    if kind is not None and not isinstance(value, kind):
        raise MalformedInputError(f"field {key!r} has the wrong type")
    return value


def _list(data, what="array"):
    if not isinstance(data, list):
        raise MalformedInputError(f"expected an {what}")
    return data


def _nat(v, what="value"):
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise MalformedInputError(f"{what} must be a natural number, got {v!r}")
    return v


def _id(v):
    if isinstance(v, bool) or not isinstance(v, (int, str)):
        raise MalformedInputError(f"point ids must be integers or strings, got {v!r}")
    return v


def seq_from_json(data) -> tuple:
    return tuple(_nat(v, "sequence entry") for v in _list(data, "array of naturals"))


# -- ordinals, trees, points ------------------------------------------------------


def ordinal_from_json(data) -> OrdinalNotation:
    if data in ("w", "omega"):
        return OMEGA
    if not isinstance(data, (int, list)) or isinstance(data, bool):
        raise MalformedInputError(f"not an ordinal: {data!r}")
    return OrdinalNotation.from_json(data)


def tree_from_json(data) -> FinTree:
    return FinTree(frozenset(seq_from_json(s) for s in _list(data, "array of nodes")))


def tree_to_json(tree: FinTree) -> list:
    return tree.to_json()


def pair_tree_from_json(data) -> PairTree:
    fd = None
    if isinstance(data, dict):
        fd = data.get("frontier_depth")
        if fd is not None:
            _nat(fd, "frontier_depth")
        data = _need(data, "nodes")
    pairs = []
    for n in _list(data, "array of pair nodes"):
        if not isinstance(n, list) or len(n) != 2:
            raise MalformedInputError(f"pair node must be [r, s], got {n!r}")
        pairs.append((seq_from_json(n[0]), seq_from_json(n[1])))
    return PairTree(frozenset(pairs), fd)


def bintree_from_json(data) -> BinTreeTrunc:
    nodes = [seq_from_json(s) for s in _list(_need(data, "nodes"))]
    return BinTreeTrunc(frozenset(nodes), _nat(_need(data, "depth"), "depth"))


def point_from_json(data) -> Point:
    return Point(seq_from_json(_need(data, "prefix")), _nat(data.get("tail", 0), "tail"))


def point_to_json(x) -> dict:
    if isinstance(x, PeriodicPoint):
        return {"prefix": list(x.prefix), "cycle": list(x.cycle)}
    return {"prefix": list(x.prefix), "tail": x.tail}


def cantor_point_from_json(data):
    if isinstance(data, dict) and "cycle" in data:
        return PeriodicPoint(seq_from_json(_need(data, "prefix")), seq_from_json(data["cycle"]))
    return point_from_json(data)


# -- codes -------------------------------------------------------------------------


def path_str(s) -> str:
    return ".".join(map(str, s))


def path_from_str(p) -> tuple:
    if not isinstance(p, str):
        raise MalformedInputError(f"node path must be a string, got {p!r}")
    if p == "":
        return ()
    try:
        return tuple(_nat(int(x), "path entry") for x in p.split("."))
    except ValueError:
        raise MalformedInputError(f"bad node path {p!r}") from None


def basic_to_json(b: BasicClopen):
    return "empty" if b.is_empty else {"cyl": list(b.seq)}


def basic_from_json(data) -> BasicClopen:
    if data == "empty":
        return EMPTY
    return Cyl(seq_from_json(_need(data, "cyl")))


def code_to_json(code: BorelCode) -> dict:
    return {
        "tree": sorted((path_str(s) for s in code.tree.nodes), key=lambda p: (p.count(".") + bool(p), p)),
        "kind": {path_str(s): k for s, k in code.kind.items()},
        "leaf": {path_str(s): basic_to_json(b) for s, b in code.leaf.items()},
    }


def code_from_json(data) -> BorelCode:
    kind = {path_from_str(p): k for p, k in _need(data, "kind", dict).items()}
    leaf = {path_from_str(p): basic_from_json(b) for p, b in _need(data, "leaf", dict).items()}
    if "tree" in data:
        nodes = frozenset(path_from_str(p) for p in _list(data["tree"]))
    else:
        nodes = frozenset(kind) | frozenset(leaf)
    return BorelCode(FinTree(nodes), kind, leaf)


# -- forcing ---------------------------------------------------------------------------


def space_from_json(data) -> fp.Space:
    points = [_id(x) for x in _list(_need(data, "points"))]
    basis = [[_id(x) for x in _list(b)] for b in _list(_need(data, "basis"))]
    return fp.Space(points, basis)


def _nice_from_json(data):
    alpha = ordinal_from_json(_need(data, "alpha"))
    return nice_tree(alpha, _nat(data.get("branching", 2), "branching"), _nat(data.get("depth", 3), "depth"))


def poset_from_json(data) -> fp.Poset:
    tag = _need(data, "poset", str)
    if tag == fp.SILVER:
        return fp.SilverPoset(space_from_json(_need(data, "space")))
    if tag == fp.FIN:
        size = data.get("size")
        return fp.FinPoset(None if size is None else _nat(size, "size"))
    if tag == fp.ALPHA:
        return fp.AlphaPoset(_nice_from_json(data), space_from_json(_need(data, "space")))
    if tag == fp.PALPHA:
        return fp.PAlphaPoset(_nice_from_json(data), _nat(_need(data, "values"), "values"))
    if tag == fp.SUBTREE:
        return fp.SubtreePoset(bintree_from_json(_need(data, "tree")))
    raise MalformedInputError(f"unknown poset {tag!r}")


def poset_to_json(poset: fp.Poset) -> dict:
    out: dict = {"poset": poset.tag}
    if isinstance(poset, (fp.SilverPoset, fp.AlphaPoset)):
        out["space"] = poset.space.to_json()
    if isinstance(poset, (fp.AlphaPoset, fp.PAlphaPoset)):
        out.update(alpha=poset.tree.alpha.to_json(), branching=poset.tree.branching, depth=poset.tree.depth)
    if isinstance(poset, fp.PAlphaPoset):
        out["values"] = poset.values
    if isinstance(poset, fp.FinPoset) and poset.size is not None:
        out["size"] = poset.size
    if isinstance(poset, fp.SubtreePoset):
        out["tree"] = poset.tree.to_json()
    return out


def _skey(s):
    return (len(s), s)


def sentence_to_json(s: fp.Sentence) -> dict:
    if s.kind == 0:
        return {"kind": "BSubU", "b": s.b, "n": s.n}
    if s.kind == 1:
        return {"kind": "XNotinU", "x": s.x, "n": s.n}
    return {"kind": "XinAll", "x": s.x}


def sentence_from_json(data) -> fp.Sentence:
    kind = _need(data, "kind", str)
    if kind == "BSubU":
        return fp.BSubU(_nat(_need(data, "b"), "b"), _nat(_need(data, "n"), "n"))
    if kind == "XNotinU":
        return fp.XNotinU(_id(_need(data, "x")), _nat(_need(data, "n"), "n"))
    if kind == "XinAll":
        return fp.XinAll(_id(_need(data, "x")))
    raise MalformedInputError(f"unknown sentence kind {kind!r}")


def condition_to_json(p) -> dict:
    if isinstance(p, fp.SilverCondition):
        return {"poset": p.tag, "sentences": [sentence_to_json(s) for s in p.ordered()]}
    if isinstance(p, fp.FinCondition):
        return {"poset": p.tag, "assign": [[i, v] for i, v in sorted(p.pairs, key=lambda iv: (isinstance(iv[0], str), iv[0]))]}
    if isinstance(p, fp.AlphaCondition):
        return {
            "poset": p.tag,
            "t": [[list(s), b] for s, b in sorted(p.t, key=lambda sb: (_skey(sb[0]), sb[1]))],
            "F": [[list(s), x] for s, x in sorted(p.F, key=lambda sx: (_skey(sx[0]), str(sx[1])))],
        }
    if isinstance(p, fp.PCondition):
        return {"poset": p.tag, "map": [[list(s), v] for s, v in sorted(p.pairs, key=lambda sv: _skey(sv[0]))]}
    if isinstance(p, fp.SubtreeCondition):
        return {"poset": p.tag, "nodes": [list(s) for s in sorted(p.nodes, key=_skey)]}
    raise MalformedInputError(f"not a condition: {p!r}")


def _pairs(data, key, left, right):
    out = []
    for item in _list(_need(data, key)):
        if not isinstance(item, list) or len(item) != 2:
            raise MalformedInputError(f"entries of {key!r} must be pairs")
        out.append((left(item[0]), right(item[1])))
    return out


def condition_from_json(data):
    tag = _need(data, "poset", str)
    if tag == fp.SILVER:
        return fp.SilverCondition(frozenset(sentence_from_json(s) for s in _list(_need(data, "sentences"))))
    if tag == fp.FIN:
        return fp.FinCondition(frozenset(_pairs(data, "assign", _id, lambda v: v)))
    if tag == fp.ALPHA:
        return fp.AlphaCondition(frozenset(_pairs(data, "t", seq_from_json, _nat)),
                                 frozenset(_pairs(data, "F", seq_from_json, _id)))
    if tag == fp.PALPHA:
        return fp.PCondition(frozenset(_pairs(data, "map", seq_from_json, lambda v: v)))
    if tag == fp.SUBTREE:
        return fp.SubtreeCondition(frozenset(seq_from_json(s) for s in _list(_need(data, "nodes"))))
    raise MalformedInputError(f"unknown poset {tag!r}")


def spec_to_json(spec: DenseSpec) -> dict:
    out = spec.to_json()
    return {k: list(v) if isinstance(v, tuple) else v for k, v in out.items()}


def specs_from_json(poset, data) -> list:
    return [spec_from_json(poset, s) for s in _list(data, "array of dense sets")]


def transcript_to_json(poset, t: Transcript) -> dict:
    return {
        "poset": poset_to_json(poset),
        "conditions": [condition_to_json(c) for c in t.conditions],
        "dense": [spec_to_json(s) for s in t.specs],
    }


def transcript_from_json(data):
    poset = poset_from_json(_need(data, "poset", dict))
    conds = [condition_from_json(c) for c in _list(_need(data, "conditions"))]
    specs = specs_from_json(poset, _need(data, "dense"))
    return poset, Transcript(poset.tag, conds, specs)


# -- algebras and families ---------------------------------------------------------------


def algebra_from_json(data):
    """{"atoms": n, "elements": [...]} as (algebra, element set)."""
    ba = FiniteBA(_nat(_need(data, "atoms"), "atoms"))
    elems = [_nat(e, "element") for e in _list(data.get("elements", []))]
    return ba, ba.check(elems)


def algebra_to_json(atoms: int, elements) -> dict:
    return {"atoms": atoms, "elements": sorted(elements)}


def family_from_json(data, kind: str) -> FieldOfSets:
    universe = [_id(u) for u in _list(_need(data, "universe"))]
    members = [[_id(u) for u in _list(m)] for m in _list(_need(data, "members"))]
    return FieldOfSets(tuple(universe), frozenset(frozenset(m) for m in members), kind)


def members_from_json(data) -> list:
    return [frozenset(_id(u) for u in _list(m)) for m in _list(data)]


__all__ = [
    "dumps",
    "seq_from_json",
    "ordinal_from_json",
    "tree_from_json",
    "tree_to_json",
    "pair_tree_from_json",
    "bintree_from_json",
    "point_from_json",
    "point_to_json",
    "cantor_point_from_json",
    "path_str",
    "path_from_str",
    "code_to_json",
    "code_from_json",
    "space_from_json",
    "poset_from_json",
    "poset_to_json",
    "condition_to_json",
    "condition_from_json",
    "spec_to_json",
    "specs_from_json",
    "transcript_to_json",
    "transcript_from_json",
    "algebra_from_json",
    "algebra_to_json",
    "family_from_json",
    "members_from_json",
]
