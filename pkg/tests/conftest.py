import pytest
from hypothesis import HealthCheck, settings

from normdiv.field import builtin
from normdiv.ideals import arithmetic
from normdiv.region import default_region

settings.register_profile("normdiv", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("normdiv")


@pytest.fixture(scope="session")
def cubic():
    return builtin("cubic")


@pytest.fixture(scope="session")
def quartic():
    return builtin("quartic")


@pytest.fixture(scope="session", params=["cubic", "quartic"])
def any_field(request):
    return builtin(request.param)


@pytest.fixture(scope="session")
def cubic_arith(cubic):
    return arithmetic(cubic)


@pytest.fixture(scope="session")
def quartic_arith(quartic):
    return arithmetic(quartic)


@pytest.fixture(scope="session")
def cubic_region(cubic):
    return default_region(cubic)


# Lines recorded by the acceptance module, echoed after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
