import pytest

from src.core import catalog
from src.core.chartab import character_table
from src.core.galois_orbits import galois_orbits
from src.core.groups import realize_shared


@pytest.fixture(scope="session")
def realized():
    """Realize a catalog family member once per test session."""
    def build(name, *params):
        return realize_shared(catalog.family_spec(name, list(params)))
    return build


@pytest.fixture(scope="session")
def table_of(realized):
    """Character table of a catalog family member."""
    def build(name, *params):
        return character_table(realized(name, *params))
    return build


@pytest.fixture(scope="session")
def orbits_of(table_of):
    def build(name, *params):
        return galois_orbits(table_of(name, *params))
    return build


@pytest.fixture
def cache_dir(tmp_path, monkeypatch):
    """A temporary cache directory exported as GALCONJ_CACHE."""
    path = tmp_path / "galconj-cache"
    monkeypatch.setenv("GALCONJ_CACHE", str(path))
    return path
