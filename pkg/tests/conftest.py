import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from oamphase.modes import BeamFrame

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("repo", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture
def frame():
    return BeamFrame(w0=1.0, k0=100.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
