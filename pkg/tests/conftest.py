import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from attain.game import Game

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

entries = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False, width=64)


@st.composite
def games(draw, max_n=5, max_m=3, m=None):
    n1 = draw(st.integers(1, max_n))
    n2 = draw(st.integers(1, max_n))
    m = m if m is not None else draw(st.integers(1, max_m))
    u = draw(arrays(np.float64, (n1, n2, m), elements=entries))
    return Game(u)


@st.composite
def matrices(draw, max_n=6):
    n1 = draw(st.integers(1, max_n))
    n2 = draw(st.integers(1, max_n))
    return draw(arrays(np.float64, (n1, n2), elements=entries))


@st.composite
def simplex_points(draw, n):
    w = draw(arrays(np.float64, n, elements=st.floats(0, 1, allow_nan=False)))
    if w.sum() <= 1e-6:
        w = np.ones(n)
    return w / w.sum()


@pytest.fixture
def ex1():
    from attain.scenarios import build_example1

    return build_example1()


@pytest.fixture
def ex2():
    from attain.scenarios import build_example2

    return build_example2()


@pytest.fixture
def ex4():
    from attain.scenarios import build_example4

    return build_example4()


@pytest.fixture(scope="session")
def net():
    from attain.scenarios import build_network_game

    return build_network_game()
