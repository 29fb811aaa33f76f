"""
Environment validation utilities. A misconfigured field or window should
fail CLI startup before any computation runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from config.settings import Settings, get_settings
from utils.errors import UsageError
from utils.linalg import parse_field


@dataclass
class EnvironmentStatus:
    """Represents the outcome of environment validation."""

    missing: List[str]
    warnings: List[str]

    @property
    def is_valid(self) -> bool:
        return len(self.missing) == 0


KNOWN_ENVS = ("production", "development", "test")


def validate_environment(settings: Settings | None = None) -> EnvironmentStatus:
    """
    Validate the engine configuration.

    Args:
        settings: Settings to check; defaults to the cached process settings.

    Returns:
        EnvironmentStatus containing invalid entries and warnings.
    """

    settings = settings or get_settings()
    missing: List[str] = []
    warnings: List[str] = []

    try:
        parse_field(settings.FIELD)
    except UsageError as exc:
        missing.append(f"FIELD: {exc.message}")

    if settings.MAX_WORKERS < 1:
        missing.append("MAX_WORKERS must be at least 1")

    try:
        lo, hi = settings.default_window_bounds()
        if lo > hi:
            missing.append("DEFAULT_WINDOW is empty (lo > hi)")
    except ValueError:
        missing.append(f"DEFAULT_WINDOW is not lo:hi ({settings.DEFAULT_WINDOW!r})")

    if settings.ORACLE_RADIUS < 1:
        missing.append("ORACLE_RADIUS must be positive")
    elif settings.ORACLE_RADIUS > 8:
        warnings.append(
            f"ORACLE_RADIUS={settings.ORACLE_RADIUS} makes oracle cross-checks slow"
        )

    if settings.ENV.lower() not in KNOWN_ENVS:
        warnings.append(f"Unknown ENV {settings.ENV!r}; treating as production")

    return EnvironmentStatus(missing=missing, warnings=warnings)
