"""The eleven acceptance criteria at their stated sizes and tolerances.

Each test prints one PASS/FAIL line (shown even under output capture) and
then asserts.  Run directly with ``python tests/test_acceptance.py`` for the
lines alone.
"""
import sys

import pytest

from grothperm.acceptance import CRITERIA


@pytest.mark.parametrize("key", sorted(CRITERIA))
def test_criterion(key, capsys):
    result = CRITERIA[key]()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()


if __name__ == "__main__":
    from grothperm.acceptance import run
    results = run()
    sys.exit(0 if all(r.passed for r in results) else 1)
