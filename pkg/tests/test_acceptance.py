"""Acceptance matrix: one test per criterion, each printing its pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline; they
are also repeated in the terminal summary.
"""

import pytest

from descset.acceptance import CRITERIA

RESULTS = []

@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    result = CRITERIA[number]()
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.line()

def test_all_fourteen_registered():
    assert sorted(CRITERIA) == list(range(1, 15))

def test_suite_time_budget():
    """The whole matrix must finish well inside five minutes."""
    if len(RESULTS) != len(CRITERIA):
        pytest.skip("needs every criterion to have run in this session")
    assert sum(r.seconds for r in RESULTS) < 300
