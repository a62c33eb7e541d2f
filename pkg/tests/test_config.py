import pytest

from app.config import get_settings, load_settings
from app.errors import ConfigurationError


def test_defaults():
    settings = load_settings()
    assert settings.log_level == "WARNING"
    assert settings.default_format == "json"
    assert (settings.default_max_grade, settings.default_seed) == (6, 0)
    assert (settings.verify_workers, settings.random_samples) == (4, 200)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("NEGINDEX_LOG_LEVEL", "debug")
    monkeypatch.setenv("NEGINDEX_FORMAT", "latex")
    monkeypatch.setenv("NEGINDEX_MAX_GRADE", "9")
    monkeypatch.setenv("NEGINDEX_SEED", "42")
    settings = load_settings()
    assert settings.log_level == "DEBUG"
    assert settings.default_format == "latex"
    assert settings.default_max_grade == 9
    assert settings.default_seed == 42


@pytest.mark.parametrize(
    "key,value",
    [
        ("NEGINDEX_FORMAT", "xml"),
        ("NEGINDEX_MAX_GRADE", "-1"),
        ("NEGINDEX_MAX_GRADE", "six"),
        ("NEGINDEX_VERIFY_WORKERS", "0"),
        ("NEGINDEX_LOG_LEVEL", "loud"),
    ],
)
def test_invalid_values(monkeypatch, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ConfigurationError) as info:
        load_settings()
    assert info.value.exit_code == 2


def test_settings_are_cached():
    assert get_settings() is get_settings()
