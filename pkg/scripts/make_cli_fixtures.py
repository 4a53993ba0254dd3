"""Write the CLI fixture inputs and manifest, then record golden outputs.

Usage: python3 scripts/make_cli_fixtures.py [--inputs-only]

Golden files are the CLI's own output; review the diff before committing
a regenerated set.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "src" / "descset" / "data" / "cli"

CHAIN3 = [[], [0], [0, 0], [0, 0, 0]]
BIN1 = [[], [0], [1]]
FULL2 = [[], [0], [1], [0, 0], [0, 1], [1, 0], [1, 1]]
FULL3 = FULL2 + [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)]


def pairs(nodes):
    return [[s, s] for s in nodes]


CYL0 = {"kind": {}, "leaf": {"": {"cyl": [0]}}}
UNION01 = {"kind": {"": "union"}, "leaf": {"0": {"cyl": [0]}, "1": {"cyl": [1]}}}

SPACE3 = {"points": ["a", "b", "c"], "basis": [["a"], ["b"], ["c"], ["a", "b"]]}

INPUTS = {
    "rank": {"tree": [[], [0], [1], [0, 0]]},
    "embed": {"tree": [[], [0]], "target": [[], [0], [0, 0]], "strict": True},
    "oplus": {"left": [[], [0], [0, 0]], "right": CHAIN3},
    "kernel": {"tree": {"nodes": pairs(FULL2), "frontier_depth": 2}},
    "skeleton": {"tree": {"nodes": pairs(FULL2), "frontier_depth": 2}, "k": 1},
    "scale": {"tree": [[], [0]], "point": {"prefix": [5, 7], "tail": 0}, "n": 1},
    "prank": {"tree": [[], [0]], "count": 2, "bound": 1},
    "nft": {"table": [[[], []], [[1], [0]], [[1, 2], [0, 0]], [[1, 2], [1, 1]]],
            "point": {"prefix": [1, 2], "tail": 0}, "depth": 2},
    "leqn": {"tree": {"nodes": FULL3, "depth": 3}, "other": {"nodes": FULL3, "depth": 3}, "n": 2},
    "fuse": {"chain": [{"nodes": FULL3, "depth": 3}] * 3},
    "eval": {"code": UNION01, "points": [{"prefix": [2], "tail": 0}, {"prefix": [1, 5], "tail": 0}]},
    "dual": {"code": UNION01, "window": {"branching": 2, "depth": 2}},
    "encode-field": {"ids": ["a", "b"], "sets": [["a"]]},
    "pair": {"n": 0, "m": 1},
    "universal": {"level": 1, "basis": ["empty", {"cyl": [0]}, {"cyl": [1]}], "depth": 1, "target": CYL0},
    "b2c": {"point": {"prefix": [2, 0, 1], "tail": 0}, "digits": 6},
    "restrict": {"tree": [[[], []], [[0], [0]], [[1], [1]], [[0, 1], [0, 0]]], "s": [0], "t": []},
    "product": {"a": [[[], []], [[0], [0]]], "b": [[[], []], [[0], [1]]]},
    "separate": {"a": [[[], []], [[0], [0]], [[0, 0], [0, 0]]], "b": [[[], []], [[0], [1]], [[0, 0], [1, 1]]],
                 "depth": 2},
    "reduce": {"a": [[], [0], [0, 0], [0, 0, 0]], "b": [[], [0]]},
    "rank-hat": {"poset": {"poset": "palpha", "alpha": "w", "branching": 2, "depth": 3, "values": 3},
                 "condition": {"poset": "palpha", "map": [[[], 0], [[0], 1]]}, "beta": 3},
    "pi-eval": {"sentence": {"and_not": [{"atom": 0}]}, "model": [0]},
    "levels": {"atoms": 2, "elements": [1]},
    "ring-levels": {"universe": ["a", "b", "c"], "members": [[], ["a"], ["b"], ["a", "b"]]},
    "quotient": {"field": {"universe": [0, 1], "members": [[], [0], [1], [0, 1]]}, "ideal": [[], [0]]},
}

EXTRA_FILES = {
    "silver_poset.json": {"poset": "silver", "space": SPACE3},
    "silver_dense.json": [{"kind": "D", "x": "c"}] + [{"kind": "E", "x": x, "n": n} for n in range(2) for x in "ab"],
    "palpha_poset.json": {"poset": "palpha", "alpha": "w", "branching": 2, "depth": 3, "values": 3},
    "palpha_dense.json": [{"kind": "D_s", "s": []}] + [{"kind": "E_s", "s": [], "k": k} for k in range(3)]
                         + [{"kind": "D_s", "s": [0]}, {"kind": "D_s", "s": [1]}],
    "bad_dense.json": [{"kind": "E_s", "s": [], "k": 7}],
    "ring_nonring.json": {"universe": ["a", "b", "c"], "members": [[], ["a"], ["b"]]},
    "malformed.json": "{\"tree\": [[], [0]",
    "wrong_shape.json": {"tree": "not a list"},
    "bad_tree.json": {"tree": [[0]]},
    "overlap.json": {"a": [[[], []], [[0], [0]]], "b": [[[], []], [[1], [0]]], "depth": 1},
    "nice_low.json": {"poset": "palpha", "alpha": 1, "branching": 2, "depth": 3, "values": 3},
    "empty_chain.json": {"chain": []},
}

MANIFEST = [{"name": n, "args": [n, "--input", f"{n}.json"], "exit": 0} for n in INPUTS]
MANIFEST += [
    {"name": "force", "args": ["force", "--poset", "silver_poset.json", "--dense", "silver_dense.json",
                               "--extract", "2"], "exit": 0},
    {"name": "force-palpha", "args": ["force", "--poset", "palpha_poset.json", "--dense", "palpha_dense.json",
                                      "--extract", "3"], "exit": 0},
    {"name": "verify-transcript", "args": ["verify-transcript", "--input", "transcript.json"], "exit": 0},
    {"name": "ring-levels-nonring", "args": ["ring-levels", "--allow-nonring", "--input", "ring_nonring.json"],
     "exit": 0},
    {"name": "sweep", "args": ["sweep", "--criteria", "10"], "exit": 0},
    # exit-code contract
    {"name": "err-malformed-json", "args": ["rank", "--input", "malformed.json"], "exit": 2},
    {"name": "err-wrong-shape", "args": ["rank", "--input", "wrong_shape.json"], "exit": 2},
    {"name": "err-invalid-tree", "args": ["rank", "--input", "bad_tree.json"], "exit": 2},
    {"name": "err-missing-file", "args": ["rank", "--input", "no_such_file.json"], "exit": 2},
    {"name": "err-unknown-command", "args": ["frobnicate"], "exit": 2},
    {"name": "err-nonring", "args": ["ring-levels", "--input", "ring_nonring.json"], "exit": 1},
    {"name": "err-not-disjoint", "args": ["separate", "--input", "overlap.json"], "exit": 1},
    {"name": "err-empty-chain", "args": ["fuse", "--input", "empty_chain.json"], "exit": 1},
    {"name": "err-alphabet", "args": ["force", "--poset", "palpha_poset.json", "--dense", "bad_dense.json"],
     "exit": 1},
    {"name": "err-nice-low", "args": ["force", "--poset", "nice_low.json", "--dense", "palpha_dense.json"],
     "exit": 1},
    {"name": "err-tampered-transcript", "args": ["verify-transcript", "--input", "tampered.json"], "exit": 1},
    {"name": "help", "args": ["--help"], "exit": 0},
]


def run(args):
    env = dict(os.environ, PYTHONHASHSEED="0", PYTHONPATH=str(ROOT / "src"))
    return subprocess.run([sys.executable, "-m", "descset.cli", *args], capture_output=True, text=True,
                          cwd=str(OUT), env=env)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, data in INPUTS.items():
        (OUT / f"{name}.json").write_text(json.dumps(data, indent=1) + "\n")
    for name, data in EXTRA_FILES.items():
        text = data if isinstance(data, str) else json.dumps(data, indent=1) + "\n"
        (OUT / name).write_text(text)
    # a transcript to replay, and a tampered copy whose second condition drops a sentence
    proc = run(["force", "--poset", "silver_poset.json", "--dense", "silver_dense.json"])
    transcript = json.loads(proc.stdout)
    (OUT / "transcript.json").write_text(json.dumps(transcript, indent=1) + "\n")
    transcript["conditions"][2]["sentences"] = []
    (OUT / "tampered.json").write_text(json.dumps(transcript, indent=1) + "\n")
    (OUT / "manifest.json").write_text(json.dumps(MANIFEST, indent=1) + "\n")
    if "--inputs-only" in sys.argv:
        return
    for case in MANIFEST:
        proc = run(case["args"])
        if proc.returncode != case["exit"]:
            raise SystemExit(f"{case['name']}: exit {proc.returncode}, expected {case['exit']}\n{proc.stderr}")
        if case["exit"] == 0 and case["name"] != "help":
            (OUT / f"{case['name']}.out").write_text(proc.stdout)


if __name__ == "__main__":
    main()
