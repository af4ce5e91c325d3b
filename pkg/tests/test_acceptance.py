"""Acceptance criteria 1-14, one verification suite each.

Every criterion prints a single ``criterion N: PASS|FAIL`` line; the lines are
also collected and repeated in the pytest terminal summary.  Run directly with
``python3 tests/test_acceptance.py`` for the lines alone.
"""
import sys
import time

import pytest

from quasiharm.cli import SuiteConfig, run_suite
from quasiharm.cli.suites import SUITE_BY_CRITERION

TIME_LIMITS = {1: 10.0, 2: 60.0}
RESULTS: dict[int, str] = {}


def evaluate(criterion: int):
    name = SUITE_BY_CRITERION[criterion]
    t0 = time.perf_counter()
    report = run_suite(name, SuiteConfig())
    elapsed = time.perf_counter() - t0
    counts = report.counts()
    failed = [c.id for c in report.checks if c.status == "fail"]
    limit = TIME_LIMITS.get(criterion)
    in_time = limit is None or elapsed < limit
    ok = report.passed and in_time and counts["pass"] > 0
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({name}, {counts['pass']} pass, {counts['fail']} fail, {elapsed:.1f}s"
    if limit is not None:
        line += f", limit {limit:.0f}s"
    line += ")"
    if failed:
        shown = ", ".join(failed[:4]) + (", ..." if len(failed) > 4 else "")
        line += f" failing: {shown}"
    return ok, line, failed, in_time


@pytest.mark.parametrize("criterion", sorted(SUITE_BY_CRITERION))
def test_criterion(criterion):
    ok, line, failed, in_time = evaluate(criterion)
    RESULTS[criterion] = line
    print(line)
    assert in_time, line
    assert not failed, line
    assert ok, line


if __name__ == "__main__":
    status = 0
    for k in sorted(SUITE_BY_CRITERION):
        ok, line, _, _ = evaluate(k)
        print(line, flush=True)
        status |= not ok
    sys.exit(status)
