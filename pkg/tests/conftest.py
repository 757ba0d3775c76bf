"""
Shared fixtures and the --runslow switch.
"""

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False,
        help="run the long simulation-study reproductions",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def s1_stats():
    from abcmeta.core.summary import SummaryStats
    return SummaryStats(x_min=0.0, x_med=5.0, x_max=10.0, n=30)


@pytest.fixture
def s2_stats():
    from abcmeta.core.summary import SummaryStats
    return SummaryStats(x_min=1.0, x_q1=3.0, x_med=5.0, x_q3=7.0, x_max=9.0, n=50)


@pytest.fixture
def s3_stats():
    from abcmeta.core.summary import SummaryStats
    return SummaryStats(x_q1=3.0, x_med=5.0, x_q3=7.0, n=50)


@pytest.fixture
def fast_abc():
    from abcmeta.abc.engine import AbcConfig
    return AbcConfig(n_iter=4_000, accept_pct=1.0, seed=11, block_size=500)
