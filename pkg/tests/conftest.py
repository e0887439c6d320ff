import pytest
from hypothesis import settings

from graphprod.graph import DefiningGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(scope="session")
def p4():
    return DefiningGraph.path("abcd")


@pytest.fixture(scope="session")
def c5():
    return DefiningGraph.cycle("abcde")


@pytest.fixture(scope="session")
def p4_z5():
    return DefiningGraph.path("abcd", "Z/5")


@pytest.fixture(scope="session")
def p4_z3():
    return DefiningGraph.path("abcd", "Z/3")


_ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture
def acceptance_log(request):
    return request.config.stash.setdefault(_ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
