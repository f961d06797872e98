import numpy as np
import pytest
from hypothesis import settings

from cogregion import GaussianChannelSpec, SplittingParams

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def setup_spec():
    return GaussianChannelSpec.simulation_setup()


def params(**kw) -> SplittingParams:
    base = dict(lam=1.0, tau=0.5, kappa=0.5)
    base.update(kw)
    return SplittingParams(**base)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
