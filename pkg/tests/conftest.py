from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from wplbraid.ktheory import lattice_for  # noqa: E402

TEST_WEIGHTS = [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 3, 5)]
ALL_WEIGHTS = [(), (2,), (3,)] + TEST_WEIGHTS + [(2, 3, 6), (2, 2, 2, 2)]


@pytest.fixture(params=TEST_WEIGHTS, ids=lambda w: ",".join(map(str, w)))
def lat(request):
    return lattice_for(request.param)


@pytest.fixture(params=ALL_WEIGHTS, ids=lambda w: ",".join(map(str, w)) or "P1")
def any_lat(request):
    return lattice_for(request.param)
