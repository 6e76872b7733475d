import pytest

from fockcalc import load_preset


@pytest.fixture(scope="session")
def p2():
    return load_preset("p2")


@pytest.fixture(scope="session")
def p1xp1():
    return load_preset("p1xp1")


@pytest.fixture(scope="session")
def torus():
    return load_preset("torus_like")


@pytest.fixture(scope="session")
def point():
    return load_preset("point")
