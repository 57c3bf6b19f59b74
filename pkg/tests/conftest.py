import pytest

from osborn.enumerate import corpus, enumerated, kinyon16


def pytest_addoption(parser):
    parser.addoption("--order6", action="store_true", default=False,
                     help="also sweep the 9408 normalized loops of order 6")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--order6"):
        return
    skip = pytest.mark.skip(reason="order-6 sweep: pass --order6")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def K():
    return kinyon16()


@pytest.fixture(scope="session")
def named():
    return corpus()


@pytest.fixture(scope="session")
def small_loops():
    """Every normalized loop of order 1..5 (62 tables)."""
    return [L for n in range(1, 6) for L in enumerated(n)]
