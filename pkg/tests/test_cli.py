import json
import os
import subprocess
import sys

import pytest

from descset import serialize as S
from descset import trees
from descset.acceptance import FIXTURES, load_manifest
from descset.cli import main

CASES = load_manifest()


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("case", [c for c in CASES if c["name"] not in ("help", "sweep")], ids=lambda c: c["name"])
def test_manifest_case(case, capsys, monkeypatch):
    monkeypatch.chdir(FIXTURES)
    code, out, err = run(case["args"], capsys)
    assert code == case["exit"], err
    if case["exit"] == 0:
        assert out == (FIXTURES / f"{case['name']}.out").read_text()
    elif case["exit"] == 2:
        assert "malformed input" in err or "error" in err


def test_rank_matches_library(capsys, monkeypatch):
    monkeypatch.chdir(FIXTURES)
    code, out, _ = run(["rank", "--input", "rank.json"], capsys)
    data = json.loads((FIXTURES / "rank.json").read_text())
    tree = S.tree_from_json(data["tree"])
    assert code == 0
    assert json.loads(out)["root_rank"] == trees.root_rank(tree).to_json()


def test_help(capsys):
    code, out, _ = run(["--help"], capsys)
    assert code == 0 and "usage" in out and "verify-transcript" in out


def test_malformed_json_names_location(capsys, monkeypatch):
    monkeypatch.chdir(FIXTURES)
    code, _, err = run(["rank", "--input", "malformed.json"], capsys)
    assert code == 2 and "line 1 column" in err


def test_stdin_and_output_file(capsys, monkeypatch, tmp_path):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO('{"n": 3, "m": 2}'))
    target = tmp_path / "out.json"
    code, out, _ = run(["pair", "-o", str(target)], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["index"] == (1 << 3) * 5 - 1


def test_non_object_input(capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO("[1, 2]"))
    assert run(["pair"], capsys)[0] == 2


def test_console_script_entry_point():
    env = dict(os.environ, PYTHONHASHSEED="0")
    proc = subprocess.run([sys.executable, "-m", "descset.cli", "pair", "--input", "pair.json"],
                          capture_output=True, text=True, cwd=FIXTURES, env=env)
    assert proc.returncode == 0
    assert proc.stdout == (FIXTURES / "pair.out").read_text()


def test_sweep_single_criterion(capsys):
    code, out, _ = run(["sweep", "--criteria", "10"], capsys)
    data = json.loads(out)
    assert code == 0 and data["all_passed"] and data["results"][0]["criterion"] == 10
