import pytest
from hypothesis import HealthCheck, settings

import constants
from rubbling.engine import Distribution
from rubbling.graphs import ladder
from rubbling.ladder import LadderLayout
from rubbling.search import compositions

settings.register_profile(
    "rubbling",
    derandomize=True,
    deadline=None,
    database=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("rubbling")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run long exhaustive checks")
    parser.addoption("--seed", type=int, default=None, help="seed for the randomized property tests")


def pytest_configure(config):
    # test modules read constants.default_seed when they are collected
    if config.getoption("--seed") is not None:
        constants.default_seed = config.getoption("--seed")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def all_distributions(vertex_count: int, max_size: int):
    """Every distribution of at most max_size pebbles, smallest first."""
    for size in range(max_size + 1):
        for counts in compositions(size, vertex_count):
            yield Distribution(counts)


def dist(*counts) -> Distribution:
    return Distribution(tuple(counts))


@pytest.fixture
def ladder4():
    return LadderLayout.of(ladder(4))


@pytest.fixture
def ladder5():
    return LadderLayout.of(ladder(5))


@pytest.fixture
def ladder6():
    return LadderLayout.of(ladder(6))
