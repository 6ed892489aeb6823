"""The ten acceptance criteria at their stated tolerances.

Each test prints one PASS/FAIL line.  Run as a script for the plain table:

    python3 tests/test_acceptance.py
"""
import sys

import pytest

from lozenge.acceptance import CRITERIA, run_all


@pytest.mark.parametrize("criterion", CRITERIA, ids=[fn.__name__ for fn in CRITERIA])
def test_criterion(criterion, capsys):
    res = criterion()
    with capsys.disabled():
        print("\n" + res.line())
    assert res.ok, res.line()


if __name__ == "__main__":
    results = run_all()
    sys.exit(0 if all(r.ok for r in results) else 1)
