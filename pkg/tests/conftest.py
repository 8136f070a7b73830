import numpy as np
import pytest

from quatft.qsignal import GridSpec, QSignal


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_signal(rng, n1, n2, d1=0.25, d2=0.25, real=False):
    s = rng.standard_normal((n1, n2, 4))
    if real:
        s[..., 1:] = 0.0
    return QSignal(GridSpec(n1, n2, d1, d2), s)
