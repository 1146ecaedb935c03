import pytest

from adlocal import matrix_ring, matrix_unit, polyquot, zmod


@pytest.fixture(scope="session")
def z2():
    return zmod(2)


@pytest.fixture(scope="session")
def z3():
    return zmod(3)


@pytest.fixture(scope="session")
def m2z2(z2):
    return matrix_ring(z2, 2)


@pytest.fixture(scope="session")
def m3z2(z2):
    return matrix_ring(z2, 3)


@pytest.fixture(scope="session")
def m2z3(z3):
    return matrix_ring(z3, 2)


@pytest.fixture(scope="session")
def units2(z2):
    return {(i, j): matrix_unit(z2, 2, i, j) for i in (1, 2) for j in (1, 2)}


@pytest.fixture(scope="session")
def poly23():
    return polyquot(2, 3)
