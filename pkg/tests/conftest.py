import os

import numpy as np
import pytest
import pytest_asyncio
from fastmcp import Client

from imex_relax.server import get_server
from imex_relax.spatial import Grid1D, Periodic


@pytest_asyncio.fixture
async def client():
    """
    Creates an in-memory Client connected to the imex-relax tools.
    """
    async with Client(get_server()) as c:
        yield c


@pytest.fixture
def periodic_grid():
    return Grid1D(-np.pi, np.pi, 64)


@pytest.fixture
def periodic():
    return Periodic()


def pytest_collection_modifyitems(config, items):
    if os.environ.get("IMEX_RELAX_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow study, set IMEX_RELAX_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
