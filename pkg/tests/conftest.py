import numpy as np
import pytest

from latinldpc import make_field


@pytest.fixture(scope="session")
def gf2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3, (1, 1, 0, 1))


@pytest.fixture(scope="session")
def gf5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def gf7():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def gf13():
    return make_field(13, 1)


@pytest.fixture()
def rng():
    return np.random.default_rng(12345)
