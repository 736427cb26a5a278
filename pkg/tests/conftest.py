import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cosetderange.catalog import build  # noqa: E402
from cosetderange.perm import parse_cycles  # noqa: E402


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(selector):
        if selector not in cache:
            cache[selector] = build(selector)
        return cache[selector]

    return get


@pytest.fixture
def cyc():
    return parse_cycles
