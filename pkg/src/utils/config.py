"""
Process-wide settings for the workbench, read from the environment.
"""

from __future__ import annotations

import os
import threading
from fractions import Fraction
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, field_validator

try:
    from dotenv import load_dotenv

    load_dotenv()
except Exception:
    pass


DEFAULT_PRECISION_CAP = "64"
DEFAULT_FIELD_CONDUCTOR = 12
DEFAULT_INITIAL_PRECISION = "4"
DEFAULT_STREAM_PULL_LIMIT = 4096
DEFAULT_LOG_LEVEL = "WARNING"


class Settings(BaseModel):
    """Numeric knobs shared by every oracle.

    ``precision_cap`` bounds every stream pull and every certified valuation;
    ``field_conductor`` selects the default coefficient field Q(zeta_N).
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    precision_cap: Fraction = Fraction(DEFAULT_PRECISION_CAP)
    initial_precision: Fraction = Fraction(DEFAULT_INITIAL_PRECISION)
    field_conductor: int = DEFAULT_FIELD_CONDUCTOR
    stream_pull_limit: int = DEFAULT_STREAM_PULL_LIMIT
    log_level: str = DEFAULT_LOG_LEVEL

    @field_validator("precision_cap", "initial_precision", mode="before")
    @classmethod
    def _parse_rational(cls, value: Any) -> Fraction:
        try:
            parsed = Fraction(str(value).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
        if parsed <= 0:
            raise ValueError(f"precision must be positive, got {value!r}")
        return parsed

    @field_validator("field_conductor", "stream_pull_limit")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError(f"expected a positive integer, got {value}")
        return value

    @field_validator("log_level")
    @classmethod
    def _level(cls, value: str) -> str:
        return value.strip().upper()


def settings_from_env() -> Settings:
    """Build settings from ``MAXSUB_*`` environment variables."""
    return Settings(
        precision_cap=os.getenv("MAXSUB_PRECISION_CAP", DEFAULT_PRECISION_CAP),
        initial_precision=os.getenv("MAXSUB_INITIAL_PRECISION", DEFAULT_INITIAL_PRECISION),
        field_conductor=int(os.getenv("MAXSUB_FIELD_CONDUCTOR", DEFAULT_FIELD_CONDUCTOR)),
        stream_pull_limit=int(os.getenv("MAXSUB_STREAM_PULL_LIMIT", DEFAULT_STREAM_PULL_LIMIT)),
        log_level=os.getenv("MAXSUB_LOG_LEVEL", DEFAULT_LOG_LEVEL),
    )


_lock = threading.Lock()
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings
    with _lock:
        if _settings is None:
            _settings = settings_from_env()
        return _settings


def configure(**overrides: Any) -> Settings:
    """Replace the process-wide settings, keeping fields that are not overridden."""
    global _settings
    base = get_settings()
    updated = Settings(**{**base.model_dump(), **{k: v for k, v in overrides.items() if v is not None}})
    with _lock:
        _settings = updated
    return updated


def reset_settings() -> None:
    """Forget cached settings so the next call re-reads the environment."""
    global _settings
    with _lock:
        _settings = None
