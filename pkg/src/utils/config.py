"""
Runtime configuration.

Values come from the environment (optionally seeded from a .env file in the
working directory) and are collected into a single Settings model.
"""

import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from src.utils.errors import ConfigurationError


_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Resolved runtime settings."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(default=0, ge=0)
    jobs: int = Field(default=1, ge=1)
    probe_budget: int = Field(default=64, ge=1)
    section_budget: int = Field(default=16, ge=1)
    log_level: str = "WARNING"


def _read_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.strip())
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}")


def load_settings() -> Settings:
    """
    Build Settings from the environment.

    Reads NLIE_SEED, NLIE_JOBS, NLIE_PROBE_BUDGET, NLIE_SECTION_BUDGET and
    NLIE_LOG_LEVEL after loading a .env file if one exists.

    Returns:
        Settings instance

    Raises:
        ConfigurationError: if a value is not usable
    """
    load_dotenv()
    level = os.getenv("NLIE_LOG_LEVEL", "WARNING").strip().upper()
    if level not in _LOG_LEVELS:
        raise ConfigurationError(f"NLIE_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}")
    try:
        return Settings(
            seed=_read_int("NLIE_SEED", 0),
            jobs=_read_int("NLIE_JOBS", 1),
            probe_budget=_read_int("NLIE_PROBE_BUDGET", 64),
            section_budget=_read_int("NLIE_SECTION_BUDGET", 16),
            log_level=level,
        )
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e.errors()[0]['msg']}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Cached settings for library code; tests call get_settings.cache_clear()."""
    return load_settings()
