"""The twelve acceptance criteria at their stated sizes and tolerances.

Each test prints one ``[PASS]``/``[FAIL]`` line, visible even when pytest
captures output, and asserts on the criterion's verdict.
"""

import pytest

from dehnforge import acceptance

SEED = 0


@pytest.mark.parametrize("number", sorted(acceptance.CRITERIA))
def test_criterion(number, capsys):
    crit = acceptance.run_criterion(number, SEED, "full")
    with capsys.disabled():
        print("\n" + crit.line())
    failing = [c.case_id for c in crit.cases if not c.passed]
    assert crit.passed, "%s; failing cases %s" % (crit.summary, failing[:10])
