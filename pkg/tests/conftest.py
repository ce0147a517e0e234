import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import simple_dataset, xy_dataset  # noqa: E402


@pytest.fixture
def dataset():
    return simple_dataset()


@pytest.fixture
def points_dataset():
    return xy_dataset([(1.0, 2.0), (2.0, 4.0), (3.0, 20.0)])
