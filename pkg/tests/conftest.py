import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tancone import make_fixture  # noqa: E402


@pytest.fixture(scope="session")
def parabola():
    return make_fixture("parabola-star-region")


@pytest.fixture(scope="session")
def square():
    return make_fixture("square-at-corner")
