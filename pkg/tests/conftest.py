import pytest

from auslander import cli

# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session", autouse=True)
def _warm_structural_names():
    # register P/S/I names before any test can claim generated names for
    # the structural modules (the algebras and registries are memoized)
    for t in (2, 3, 4):
        cli.get_algebra(t)


@pytest.fixture(scope="session")
def A2():
    return cli.get_algebra(2)


@pytest.fixture(scope="session")
def A3():
    return cli.get_algebra(3)


@pytest.fixture(scope="session")
def A4():
    return cli.get_algebra(4)
