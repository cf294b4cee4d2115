import pytest
from sympy.polys.domains import QQ

from stringnet.backends.fixtures import bundled_backend
from stringnet.cli.files import load_diagram
from stringnet.monad.monad import central_monad
from tests.helpers import data_path


@pytest.fixture(scope="session")
def vect():
    return bundled_backend("vect", QQ)


@pytest.fixture(scope="session")
def vect_z2():
    return bundled_backend("vect-z2", QQ)


@pytest.fixture(scope="session")
def vect_s3():
    return bundled_backend("vect-s3", QQ)


@pytest.fixture(scope="session")
def hopf_z2():
    return bundled_backend("hopf-z2", QQ)


@pytest.fixture(scope="session")
def hopf_h4():
    return bundled_backend("hopf-h4", QQ)


@pytest.fixture(scope="session")
def five_coupons(vect):
    diagram, _ = load_diagram(data_path("five_coupons.json"), QQ, vect)
    return diagram


@pytest.fixture(scope="session")
def monad_z2(vect_z2):
    return central_monad(vect_z2, 1)


@pytest.fixture(scope="session")
def monad_s3(vect_s3):
    return central_monad(vect_s3, 1)


@pytest.fixture(scope="session")
def monad_h4(hopf_h4):
    return central_monad(hopf_h4, 1)
