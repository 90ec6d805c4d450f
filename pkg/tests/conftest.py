from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "exact",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


@pytest.fixture
def ctx_half():
    from qappell import QContext

    return QContext(Fraction(1, 2))


def q_values():
    """Strategy for the base: rationals strictly inside (0, 1)."""
    return st.fractions(
        min_value=Fraction(1, 64), max_value=Fraction(63, 64), max_denominator=64
    )


def small_fractions(bound: int = 8, max_denominator: int = 24):
    return st.fractions(
        min_value=Fraction(-bound), max_value=Fraction(bound), max_denominator=max_denominator
    )
