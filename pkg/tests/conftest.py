import numpy as np
import pytest

from qholo.corpus import known_braid
from qholo.ladder import Ladder, Reducer
from qholo.web import Edge, Web


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def fixed_step_limit(monkeypatch):
    # keep a stray .env from changing the reduction budget under test
    monkeypatch.setenv("QHOLO_STEP_LIMIT", "1000000")


@pytest.fixture
def reducer():
    return Reducer(step_limit=10**6)


@pytest.fixture
def trefoil():
    return known_braid("3_1")


@pytest.fixture
def figure8():
    return known_braid("4_1")


@pytest.fixture
def theta_ladder():
    # strand 0 carries 2 between the rungs, strand 1 carries 0
    return Ladder((1, 1), ((0, "E", 1), (0, "F", 1)))


@pytest.fixture
def theta_web():
    # two edges colored 1 from u to v, one edge colored 2 back
    return Web(
        [[0, 2, 5], [1, 4, 3]],
        [Edge(0, 1, 1), Edge(2, 3, 1), Edge(4, 5, 2)],
    )
