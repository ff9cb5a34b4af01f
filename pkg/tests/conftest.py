import os

import pytest

from cliffpair.liealg import pair_from_id

STRETCH = os.environ.get("CLIFFPAIR_STRETCH") == "1"
PRIMARY_IDS = ["sl3-so3", "sl4-sp4", "sl5-so5"]
SMALL_IDS = ["sl3-so3", "sl4-sp4"]

_pairs = {}


def get_pair(pid):
    # built pairs carry caches of expensive results, so share them per session
    if pid not in _pairs:
        _pairs[pid] = pair_from_id(pid)
    return _pairs[pid]


def pytest_collection_modifyitems(config, items):
    if STRETCH:
        return
    skip = pytest.mark.skip(reason="stretch pair; set CLIFFPAIR_STRETCH=1")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(params=PRIMARY_IDS)
def primary_pair(request):
    return get_pair(request.param)


@pytest.fixture(params=SMALL_IDS)
def small_pair(request):
    return get_pair(request.param)
