"""Acceptance gate: the nine exact end-to-end criteria behind `rayzeta verify`.

Each test runs one criterion and prints a single pass/fail line; every
comparison inside the criteria is exact (tolerance 0).
"""

import sys

import pytest

from rayzeta.cli import CRITERIA, run_criterion


@pytest.mark.parametrize("name", sorted(CRITERIA))
def test_criterion(name):
    result = run_criterion(name)
    status = "PASS" if result["passed"] else "FAIL"
    line = (
        f"{name} {result['description']}: {status} "
        f"(checked {result.get('checked', 0)}, {result['seconds']}s)"
    )
    print(line)
    print(line, file=sys.stderr)
    assert result["passed"], result.get("detail", name)
