import pytest

from components import fan
from utility.settings import get_settings


@pytest.fixture
def fresh_settings(monkeypatch):
    """Drops the cached settings before and after a test that edits the environment."""
    get_settings.cache_clear()
    yield monkeypatch
    get_settings.cache_clear()


@pytest.fixture(scope='session')
def d3_cells():
    return fan.traverse_fan(3)


@pytest.fixture(scope='session')
def d4_cells():
    return fan.traverse_fan(4)
