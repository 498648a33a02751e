import logging

import numpy
import pytest

from cesnorms.formulas import TruncConfig
from cesnorms.sequences import Weight

ALPHA_GRID = (-2.0, -1.0, -0.5, 0.0, 0.3, 0.7, 0.99)
WIDE_ALPHA_GRID = (-2.0, -1.0, -0.5, 0.0, 0.3, 0.7, 1.0, 1.5, 2.0)

_MAX_LIST = 20
_ZERO_FRACTION = 0.1
_PAIRS = 10
_ACCEPTANCE_PAIRS = 50

_logger = logging.getLogger(__name__)


def random_list_weight(rng, max_len=_MAX_LIST, zero_fraction=_ZERO_FRACTION):
    size = int(rng.integers(1, max_len + 1))
    values = rng.uniform(0.0, 1.0, size)
    values[rng.uniform(0.0, 1.0, size) < zero_fraction] = 0.0
    return Weight.from_values(values)


def assert_close(actual, expected, rel=1e-9, abs_tol=1e-12):
    if expected == numpy.inf or actual == numpy.inf:
        assert actual == expected
        return

    assert abs(actual - expected) <= max(rel * abs(expected), abs_tol), \
        "{} != {}".format(actual, expected)


@pytest.fixture
def rng():
    return numpy.random.default_rng(7)


@pytest.fixture
def trunc_cfg():
    return TruncConfig(n_max=2000, tol=1e-9, divergence_threshold=1e15, workers=1)


@pytest.fixture
def alpha_grid():
    return ALPHA_GRID


@pytest.fixture
def list_pairs(rng):
    pairs = [(random_list_weight(rng), random_list_weight(rng)) for _ in range(_PAIRS)]
    _logger.debug("List weight pairs: %s", pairs)
    return pairs


@pytest.fixture
def acceptance_pairs(rng):
    return [(random_list_weight(rng), random_list_weight(rng)) for _ in range(_ACCEPTANCE_PAIRS)]
