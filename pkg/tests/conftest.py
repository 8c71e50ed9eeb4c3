import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from eqlines import configurations as cfg
from eqlines.codes import restrict_switch

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def johnson():
    return cfg.johnson28()


@pytest.fixture(scope="session")
def johnson_restricted(johnson):
    return restrict_switch(johnson, 0)


@pytest.fixture(scope="session")
def icosahedron():
    return cfg.icosahedron6()


@pytest.fixture(scope="session")
def sic2():
    return cfg.sic_c2()


@pytest.fixture(scope="session")
def sic3():
    return cfg.sic_c3()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
