import pytest

from ringcomp.rings import gf, matrix_ring, product, zmod


@pytest.fixture(scope="session")
def f2():
    return gf(2)


@pytest.fixture(scope="session")
def f3():
    return gf(3)


@pytest.fixture(scope="session")
def z4():
    return zmod(4)


@pytest.fixture(scope="session")
def z8():
    return zmod(8)


@pytest.fixture(scope="session")
def m2f2():
    return matrix_ring(gf(2), 2)


@pytest.fixture(scope="session")
def f2xf3():
    return product(gf(2), gf(3))
