from fractions import Fraction

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from grassorth.scalars import GaussianRational, exact_array

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**32 - 1)
small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=6)
gaussian_rationals = st.builds(GaussianRational, small_fractions, small_fractions)


def gq(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def ex(rows):
    """Exact array from nested ints / Fractions / complex-int literals."""
    def conv(x):
        if isinstance(x, complex):
            return GaussianRational(int(x.real), int(x.imag))
        return x

    arr = np.array(rows, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        out[idx] = conv(x)
    return exact_array(out)


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.LINES:
        terminalreporter.write_line(line)
