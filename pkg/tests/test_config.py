import logging
from pathlib import Path

import pytest
from dotenv import dotenv_values

from config.env_validation import validate_environment
from config.logging_config import resolve_level
from config.settings import Settings, get_settings


def test_settings_defaults(monkeypatch):
    """Defaults apply when nothing is set"""
    for key in ("FIELD", "MAX_WORKERS", "DEFAULT_WINDOW", "ORACLE_RADIUS"):
        monkeypatch.delenv(key, raising=False)
    settings = Settings(_env_file=None)
    assert settings.FIELD == "QQ"
    assert settings.MAX_WORKERS == 1
    assert settings.default_window_bounds() == (-5, 4)
    assert settings.ORACLE_RADIUS == 4


def test_environment_overrides(monkeypatch):
    """Environment variables win and are read once per cache"""
    monkeypatch.setenv("FIELD", "GF(5)")
    monkeypatch.setenv("MAX_WORKERS", "3")
    settings = get_settings()
    assert settings.FIELD == "GF(5)"
    assert settings.MAX_WORKERS == 3
    assert get_settings() is settings


def test_valid_environment():
    status = validate_environment(Settings(_env_file=None, ENV="test"))
    assert status.is_valid
    assert status.warnings == []


@pytest.mark.parametrize(
    "overrides,fragment",
    [
        ({"FIELD": "GF(6)"}, "FIELD"),
        ({"MAX_WORKERS": 0}, "MAX_WORKERS"),
        ({"DEFAULT_WINDOW": "4:-5"}, "empty"),
        ({"DEFAULT_WINDOW": "wide"}, "not lo:hi"),
        ({"ORACLE_RADIUS": 0}, "ORACLE_RADIUS"),
    ],
)
def test_invalid_environment(overrides, fragment):
    status = validate_environment(Settings(_env_file=None, ENV="test", **overrides))
    assert not status.is_valid
    assert fragment in status.missing[0]


def test_environment_warnings():
    """A large oracle radius and an unknown ENV only warn"""
    status = validate_environment(Settings(_env_file=None, ENV="staging", ORACLE_RADIUS=12))
    assert status.is_valid
    assert len(status.warnings) == 2


def test_log_level_resolution():
    """development always logs at DEBUG; unknown names fall back to WARNING"""
    assert resolve_level("ERROR", "development") == logging.DEBUG
    assert resolve_level("info", "production") == logging.INFO
    assert resolve_level("chatty", "production") == logging.WARNING


def test_env_example_matches_defaults(monkeypatch):
    """Copying .env.example changes nothing, in particular not the log level"""
    example = dotenv_values(Path(__file__).resolve().parent.parent / ".env.example")
    for key in example:
        monkeypatch.delenv(key, raising=False)
    defaults = Settings(_env_file=None)
    assert example["ENV"] == "production"
    assert {key: str(getattr(defaults, key)) for key in example} == dict(example)
