import math

import numpy as np
import pytest

from statetexture import DensityMatrix, PureState


@pytest.fixture
def bell_state():
    v = np.zeros(4)
    v[0] = v[3] = 1.0 / math.sqrt(2.0)
    return PureState(v, (2, 2))


@pytest.fixture
def ghz3():
    v = np.zeros(8)
    v[0] = v[7] = 1.0 / math.sqrt(2.0)
    return PureState(v, (2, 2, 2))


@pytest.fixture
def w3():
    v = np.zeros(8)
    v[1] = v[2] = v[4] = 1.0 / math.sqrt(3.0)
    return PureState(v, (2, 2, 2))


@pytest.fixture
def maximally_mixed():
    def make(d, dims=None):
        return DensityMatrix(np.eye(d, dtype=complex) / d, dims)
    return make
