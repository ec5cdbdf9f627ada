"""Session-scoped fixtures; the registry cache makes machine reuse cheap."""
import pytest

from ocalab import get_entry


@pytest.fixture(scope="session")
def m1():
    return get_entry("m1").machine


@pytest.fixture(scope="session")
def m2():
    return get_entry("m2").machine


@pytest.fixture(scope="session")
def xoreq():
    return get_entry("xoreq-q1ca").machine


@pytest.fixture(scope="session")
def onenone():
    return get_entry("onenone-lv").machine


@pytest.fixture(scope="session")
def eqstar_k3():
    return get_entry("eq-star-p1bca-k3").machine


@pytest.fixture(scope="session")
def eq3_k4():
    return get_entry("eq3-p1bca-k4").machine


@pytest.fixture(scope="session")
def complement():
    return get_entry("eq-star-complement-d1ca").machine


@pytest.fixture(scope="session")
def lang_l_k3():
    return get_entry("lang-L-p1ca-k3").machine
