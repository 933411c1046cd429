import pytest

from cido.acceptance import load_variety
from cido.deforms import space_of
from cido.qpoly import RingSpec


@pytest.fixture(scope="session")
def cubic():
    return load_variety("fermat-cubic")


@pytest.fixture(scope="session")
def ci22():
    return load_variety("ci22")


@pytest.fixture(scope="session")
def cubic_space(cubic):
    return space_of(cubic.dwork)


@pytest.fixture(scope="session")
def ci22_space(ci22):
    return space_of(ci22.dwork)


@pytest.fixture
def cubic_spec():
    return RingSpec.from_strings(2, ["x0^3 + x1^3 + x2^3"])


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
