import pytest
from hypothesis import HealthCheck, settings

from nonlocal_casimir.material import ResponseKind, gold_like

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def gold():
    return gold_like()


@pytest.fixture
def gold_anomalous():
    return gold_like(response=ResponseKind.ANOMALOUS_LIMIT)


_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
