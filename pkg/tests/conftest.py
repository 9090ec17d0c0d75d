from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from stabkit import Instance, Rect

settings.register_profile(
    "det",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("det")


def make_instance(coords) -> Instance:
    """Build an instance from (xl, xr, yb, yt) tuples; ids are positional."""
    return Instance(tuple(Rect(i, *c) for i, c in enumerate(coords, start=1)))


@pytest.fixture
def i1() -> Instance:
    # shared fixture used across modules; its optimum is 6
    return make_instance([(0, 4, 0, 2), (1, 3, 1, 5), (5, 7, 0, 3)])


@pytest.fixture
def half() -> Fraction:
    return Fraction(1, 2)
