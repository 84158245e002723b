import pytest

from pcells import verify


@pytest.fixture(scope="session")
def a2():
    return verify.get_system("A2")


@pytest.fixture(scope="session")
def a3():
    return verify.get_system("A3")


@pytest.fixture(scope="session")
def b2():
    return verify.get_system("B2")


@pytest.fixture(scope="session")
def b3():
    return verify.get_system("B3")


@pytest.fixture(scope="session")
def c3():
    return verify.get_system("C3")


@pytest.fixture(scope="session")
def g2():
    return verify.get_system("G2")


@pytest.fixture(scope="session")
def kl_a2():
    return verify.get_kl("A2")


@pytest.fixture(scope="session")
def kl_a3():
    return verify.get_kl("A3")


@pytest.fixture(scope="session")
def kl_b2():
    return verify.get_kl("B2")


@pytest.fixture(scope="session")
def kl_b3():
    return verify.get_kl("B3")


@pytest.fixture(scope="session")
def kl_c3():
    return verify.get_kl("C3")


@pytest.fixture(scope="session")
def c3_p2():
    return verify.get_table("C3", 2)


@pytest.fixture(scope="session")
def b2_p2():
    return verify.get_table("B2", 2)
