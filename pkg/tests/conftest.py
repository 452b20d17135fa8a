import pytest

from regbound import Ring, Submodule

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def R2():
    return Ring(2)


@pytest.fixture
def R3():
    return Ring(3)


def ideal(ring, *polys):
    return Submodule.ideal(ring, list(polys))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
