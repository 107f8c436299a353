import pytest

from ncmc.triangulation import get_surface


@pytest.fixture(scope="session")
def torus1():
    return get_surface("g1p1")


@pytest.fixture(scope="session")
def genus2():
    return get_surface("g2p0")


@pytest.fixture(scope="session")
def genus2p2():
    return get_surface("g2p2")
