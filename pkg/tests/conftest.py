import pytest

from brauer_kit.rings import LocalIntegers, PrimeField, Rationals, parse_ring_spec


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def Z9():
    return LocalIntegers(3, 2)


@pytest.fixture
def QQ():
    return Rationals()


@pytest.fixture
def F4():
    return parse_ring_spec("GF(2^2;1,1,1)")
