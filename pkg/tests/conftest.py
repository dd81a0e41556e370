import pytest
from hypothesis import HealthCheck, settings

from linkinv.families import corpus

# property suites are derandomized: the same examples every run
settings.register_profile(
    "fixed", derandomize=True, deadline=None, max_examples=100,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("fixed")


@pytest.fixture(scope="session")
def links():
    return corpus()


@pytest.fixture(scope="session")
def small_links():
    return corpus(max_crossings=10)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
