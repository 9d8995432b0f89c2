import pytest

from hyperlie.hyperelliptic_ring import Curve


@pytest.fixture(scope="session")
def cubic():
    return Curve.parse("t^3+a*t+1")


@pytest.fixture(scope="session")
def legendre_c():
    return Curve.parse("t^2-2*b*t+1")


@pytest.fixture(scope="session")
def lemma_c():
    return Curve.parse("t^2-2*b*t")


@pytest.fixture(scope="session")
def even_quartic():
    return Curve.parse("t^4-2*b*t^2+1")
