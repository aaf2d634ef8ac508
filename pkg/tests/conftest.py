import numpy as np
import pytest

from bohemian.family import FamilySpec, Kind, Population
from bohemian.scalars import gaussian, roots_of_unity, scalar


def pop(*xs):
    return Population(tuple(xs))


@pytest.fixture
def gauss_pm():
    """The two-element population -1 +/- i."""
    return pop(gaussian(-1, 1), gaussian(-1, -1))


@pytest.fixture
def quarter_roots():
    return Population(tuple(roots_of_unity(4)))


@pytest.fixture
def signs():
    return pop(scalar(-1), scalar(1))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def spec(kind, m, population, **kw):
    return FamilySpec(Kind(kind), m, population, **kw)
