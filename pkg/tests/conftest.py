import pytest
from hypothesis import settings

from adlv.cartan import RootSystem
from adlv.weyl import DiagramAutomorphism

settings.register_profile("ci", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("ci")


@pytest.fixture(scope="session")
def a1():
    return RootSystem.from_descriptor("A1")


@pytest.fixture(scope="session")
def a2():
    return RootSystem.from_descriptor("A2")


@pytest.fixture(scope="session")
def b2():
    return RootSystem.from_descriptor("B2")


@pytest.fixture(scope="session")
def g2():
    return RootSystem.from_descriptor("G2")


@pytest.fixture(scope="session")
def a3():
    return RootSystem.from_descriptor("A3")


def identity_sigma(system):
    return DiagramAutomorphism.identity(system)


@pytest.fixture(scope="session")
def a3_flip(a3):
    return DiagramAutomorphism(a3, (2, 1, 0))
