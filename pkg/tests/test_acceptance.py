"""Acceptance criteria, one line each, all exact.

Run ``pytest tests/test_acceptance.py -v -s`` (or ``python tests/test_acceptance.py``)
to see the PASS/FAIL lines.  Criterion 3 includes a printed closed form that
is wrong for r+s >= 0; it is reported as FAIL and marked xfail, never patched.
"""
import sys

import pytest

from hyperlie.verify import SUITES, run_suite

SEED = 7

# checks known to fail because the published formula itself is wrong
KNOWN_FAILURES = {3: {"tu printed closed form on [-8,8]^2"}}


def _line(res) -> str:
    status = "PASS" if res.passed else "FAIL"
    line = f"[{status}] criterion {res.number:>2}: {res.name}"
    for c in res.failing():
        line += f"\n         - {c.label}: {c.detail}"
    return line


@pytest.mark.parametrize("number", sorted(SUITES))
def test_criterion(number, capsys):
    res = run_suite(number, SEED)
    with capsys.disabled():
        print("\n" + _line(res))
    failing = {c.label for c in res.failing()}
    known = KNOWN_FAILURES.get(number, set())
    assert failing <= known, f"unexpected failures: {failing - known}"
    if failing:
        pytest.xfail(f"published formula disagrees with the exact computation: {sorted(failing)}")
    assert not known, "a known failure unexpectedly passed; update KNOWN_FAILURES"


if __name__ == "__main__":
    ok = True
    for k in sorted(SUITES):
        r = run_suite(k, SEED)
        ok &= r.passed
        print(_line(r))
    sys.exit(0 if ok else 2)
