import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from stieltjes_pade import SpectralMeasure

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TWO_ATOMS = SpectralMeasure.from_atoms([0.25, 0.75], [0.3, 0.2])


@pytest.fixture
def two_atoms():
    return TWO_ATOMS


@pytest.fixture
def checkerboard():
    return SpectralMeasure.checkerboard()


@st.composite
def atomic_measures(draw, max_atoms=5, allow_zero=True, min_gap=0.05):
    """Atomic measures with well separated positions in [0, 0.95]."""
    n = draw(st.integers(1, max_atoms))
    slots = np.arange(0.0, 0.95 + 1e-12, min_gap)
    if not allow_zero:
        slots = slots[1:]
    idx = draw(st.lists(st.integers(0, len(slots) - 1), min_size=n, max_size=n, unique=True))
    w = draw(st.lists(st.floats(0.05, 1.0), min_size=n, max_size=n))
    w = np.array(w)
    w *= draw(st.floats(0.1, 0.9)) / w.sum()
    return SpectralMeasure.from_atoms(slots[sorted(idx)], w)
