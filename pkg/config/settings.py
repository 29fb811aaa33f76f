"""Pydantic-based configuration management for the multigraded cohomology engine."""

from __future__ import annotations

from functools import lru_cache
from typing import Tuple

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Typed configuration loaded from environment variables and .env file."""

    # Arithmetic
    FIELD: str = Field(
        "QQ", description="Default coefficient field tag: QQ or GF(p)"
    )

    # Runtime behavior
    MAX_WORKERS: int = Field(
        1, description="Thread-pool width for per-cell slice computations"
    )
    DEFAULT_WINDOW: str = Field(
        "-5:4", description="Default coarse render window as lo:hi per axis"
    )
    ORACLE_RADIUS: int = Field(
        4, description="Half-width of the fine windows used by oracle cross-checks"
    )
    ENV: str = Field("production", description="Runtime environment name")
    LOG_LEVEL: str = Field("WARNING", description="Structlog log level")

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="allow",
    )

    def default_window_bounds(self) -> Tuple[int, int]:
        """Return the (lo, hi) pair encoded in DEFAULT_WINDOW."""
        lo, _, hi = self.DEFAULT_WINDOW.partition(":")
        return int(lo), int(hi)


@lru_cache()
def get_settings() -> Settings:
    """Return cached Settings instance to avoid re-parsing environment variables."""
    return Settings()
