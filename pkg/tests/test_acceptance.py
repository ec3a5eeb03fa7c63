"""The seven acceptance criteria, one test each.

Each test prints a ``criterion N PASS|FAIL`` line with its sub-checks, also
when pytest captures output, so the summary is visible in a plain run.
"""
import pytest

from ellhyp import selftest


@pytest.mark.slow
@pytest.mark.parametrize("crit", selftest.CRITERIA, ids=[f"criterion_{k + 1}" for k in range(len(selftest.CRITERIA))])
def test_criterion(crit, capsys):
    res = crit()
    with capsys.disabled():
        print()
        selftest.report(res)
    failed = [f"{s.name}: {s.detail}" for s in res.subchecks if not s.passed]
    assert res.passed, "; ".join(failed)
