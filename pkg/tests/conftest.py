import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from pdagkit import fixtures  # noqa: E402

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def fig1():
    return fixtures.fig1_dag()


@pytest.fixture
def fig3():
    return fixtures.fig3_pdag()


@pytest.fixture
def fig6():
    return fixtures.fig6_pdag()


@pytest.fixture
def fig8():
    return fixtures.fig8_pdag()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
