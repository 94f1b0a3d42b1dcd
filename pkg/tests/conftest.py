import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from stmodkit.algebra import build_case_a, build_case_b, subalgebra

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def A():
    return build_case_a(1)


@pytest.fixture(scope="session")
def A2():
    return build_case_a(2)


@pytest.fixture(scope="session")
def B():
    return build_case_b()


@pytest.fixture(scope="session")
def D(A):
    return subalgebra(A)


@pytest.fixture(scope="session")
def A4(B):
    return subalgebra(B)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
