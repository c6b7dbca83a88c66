import cmath
import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def disk_points(rmax=0.9):
    """Complex numbers with modulus <= rmax, drawn in polar form."""
    return st.builds(
        lambda rho, th: rmax * rho * cmath.exp(1j * th),
        st.floats(0.0, 1.0),
        st.floats(-math.pi, math.pi),
    )


def canonical_pairs(rmin=0.1, rmax=0.9):
    """(r, s) with 0 <= s < r, s kept a margin below r."""
    return st.builds(
        lambda r, frac: (r, frac * r),
        st.floats(rmin, rmax),
        st.floats(0.0, 0.95),
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
