"""One test per acceptance check.

Every check's PASS/FAIL line is collected and printed in the terminal summary,
so it shows up even without ``-s``.  Checks 5 and 6 are expected to fail
(see README).
"""

import pytest

from fpvariety.acceptance import CHECKS, run_check

LINES: list[str] = []


@pytest.mark.parametrize("number", [n for n, *_ in CHECKS], ids=[f"{n:02d}-{t}" for n, t, *_ in CHECKS])
def test_acceptance(number):
    result = run_check(number)
    LINES.append(result.line())
    print(result.line())
    assert result.ok, result.detail
