import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bwfamily.exactmath import QPoly


def random_poly(rng: random.Random, max_deg: int = 6, num: int = 9, den: int = 4) -> QPoly:
    deg = rng.randint(0, max_deg)
    return QPoly([Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(deg + 1)])


small_fractions = st.builds(
    Fraction, st.integers(min_value=-12, max_value=12), st.integers(min_value=1, max_value=6)
)


def polys(max_deg: int = 6, nonzero: bool = False):
    strat = st.lists(small_fractions, min_size=0, max_size=max_deg + 1).map(QPoly)
    if nonzero:
        strat = strat.filter(lambda p: not p.is_zero())
    return strat


int_polys = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=6).map(QPoly)


@pytest.fixture
def rng():
    return random.Random(20240611)
