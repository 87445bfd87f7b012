"""Acceptance criteria, one test each, at the stated time limits.

Every test prints one PASS/FAIL line. Run directly with
``python3 tests/test_acceptance.py`` for just the summary.
"""

import pytest

from minspec import verify

CHECKS = verify.FULL_CHECKS


def _report(result):
    lines = [result.line(timing=True)] + [f"      finding: {f}" for f in result.findings]
    return "\n".join(lines)


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i:02d}_{c.__name__[6:]}"
                                               for i, c in enumerate(CHECKS, 1)])
def test_criterion(check, capsys):
    result = check()
    with capsys.disabled():
        print("\n" + _report(result))
    assert result.passed, _report(result)


if __name__ == "__main__":
    import sys
    results = [c() for c in CHECKS]
    for r in results:
        print(_report(r))
    print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    sys.exit(0 if all(r.passed for r in results) else 1)
