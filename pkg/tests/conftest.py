import pytest

from planegalois.fields import FieldDescriptor, make_field


@pytest.fixture(scope="session")
def Q():
    return make_field(FieldDescriptor.rational())


@pytest.fixture(scope="session")
def Z3():
    return make_field(FieldDescriptor.cyclotomic(3))


@pytest.fixture(scope="session")
def Z4():
    return make_field(FieldDescriptor.cyclotomic(4))


@pytest.fixture(scope="session")
def Z5():
    return make_field(FieldDescriptor.cyclotomic(5))


@pytest.fixture(scope="session")
def Z8():
    return make_field(FieldDescriptor.cyclotomic(8))


@pytest.fixture(scope="session")
def F3():
    return make_field(FieldDescriptor.prime(3))


@pytest.fixture(scope="session")
def F7():
    return make_field(FieldDescriptor.prime(7))
