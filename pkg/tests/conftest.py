import pytest

from gamowdecay import ShellModel, find_poles

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def model100():
    return ShellModel.from_lambda(100.0)


@pytest.fixture(scope="session")
def pole100(model100):
    return find_poles(model100, count=1)[0]


@pytest.fixture(scope="session")
def poles_by_lambda():
    """First two poles for the lambda sweep used across modules."""
    out = {}
    for lam in (20.0, 50.0, 100.0):
        model = ShellModel.from_lambda(lam)
        out[lam] = (model, find_poles(model, count=2))
    return out


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
