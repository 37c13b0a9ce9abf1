"""
Shared fixtures and the --runslow switch.
"""
import numpy as np
import pytest
from schemas.dynamics import DynamicsParams
from schemas.environment import EnvConfig


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the long training acceptance tests")


def pytest_collection_modifyitems(config: pytest.Config,
                                  items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def small_env() -> EnvConfig:
    return EnvConfig(spin=1, params=DynamicsParams.superradiant(0.02),
                     t_step=1.0, k_step=0.5, t_opt=4.0)


@pytest.fixture
def closed_env() -> EnvConfig:
    return EnvConfig(spin=2, t_step=1.0, k_step=0.1, t_opt=5.0)
