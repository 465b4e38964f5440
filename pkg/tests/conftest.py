import pytest

from nichols_weyl.cartangraph import explore
from nichols_weyl.config import load_fixture
from nichols_weyl.reflect import ModuleCatalog, ModuleTuple, Reflector


@pytest.fixture(scope="session")
def cfg():
    return load_fixture()


@pytest.fixture(scope="session")
def mods(cfg):
    return cfg.modules


@pytest.fixture(scope="session")
def base(cfg):
    return ModuleTuple(tuple(cfg.base_tuple()))


@pytest.fixture(scope="session")
def catalog(cfg):
    return ModuleCatalog(list(cfg.modules.values()))


@pytest.fixture(scope="session")
def graph(base, catalog):
    return explore(base, Reflector(), catalog)
