import pytest

from corpus import make_corpus
from llseries.field import QQ, PrimeField
from llseries.instances import adaptable_fixture, witness_fixture


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


@pytest.fixture(scope="session")
def adaptable():
    return adaptable_fixture(QQ)


@pytest.fixture(scope="session")
def witness():
    return witness_fixture(QQ)


@pytest.fixture(scope="session")
def F5():
    return PrimeField(5)


@pytest.fixture(scope="session")
def F3():
    return PrimeField(3)
