"""Runs each acceptance criterion at its stated tolerance and time limit."""

import pytest

from cido import acceptance

from .conftest import ACCEPTANCE_LINES

RUNNERS = {
    1: acceptance.criterion_1,
    2: acceptance.criterion_2,
    3: acceptance.criterion_3,
    4: acceptance.criterion_4,
    5: lambda: acceptance.criterion_5(seed=0, cases=50),
    6: acceptance.criterion_6,
    7: acceptance.criterion_7,
    8: acceptance.criterion_8,
    9: lambda: acceptance.criterion_9(seed=0, cases=50),
}


@pytest.mark.parametrize("number", sorted(RUNNERS))
def test_criterion(number):
    result = RUNNERS[number]()
    line = result.line()
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result.passed, result.to_json()
