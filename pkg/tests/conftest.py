import pytest
from hypothesis import settings

from app.config import _ENV_KEYS, get_settings

settings.register_profile("negindex", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("negindex")


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees settings built from its own environment, not from a developer's .env."""
    for key in _ENV_KEYS.values():
        monkeypatch.delenv(key, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
