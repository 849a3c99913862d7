"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from supnorm.acceptance import CRITERIA

RESULTS = []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number):
    res = CRITERIA[number](0)
    RESULTS.append(res.line())
    print(res.line())
    assert res.passed, res.line()
