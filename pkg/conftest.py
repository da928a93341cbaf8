import os

import pytest
from hypothesis import settings

from core.assignments.explicit_assignment import build_explicit_assignment
from core.assignments.hash_assignment import build_hash_assignment
from core.config.params import new_params

collect_ignore = ["examples"]

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile("dev", max_examples=40, deadline=None)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="运行验收规模的慢速测试")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 验收规模的慢速测试，需 --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def small_params():
    return new_params(16, 2, C=16, Cprime=3, Ctil=1, seed=42)


@pytest.fixture
def small_explicit(small_params):
    return build_explicit_assignment(small_params)


@pytest.fixture
def small_hashed():
    params = new_params(32, 4, C=16, Cprime=3, Ctil=2, seed=5)
    return build_hash_assignment(params, 5)
