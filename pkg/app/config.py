import os
import logging
from functools import lru_cache
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from app.errors import ConfigurationError

load_dotenv()
logger = logging.getLogger(__name__)

OutputFormat = Literal["json", "csv", "latex"]
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    """Runtime settings. CLI flags override every field."""

    log_level: str = "WARNING"
    default_format: OutputFormat = "json"
    default_max_grade: int = Field(default=6, ge=0)
    default_seed: int = 0
    verify_workers: int = Field(default=4, ge=1)
    random_samples: int = Field(default=200, ge=1)

    @field_validator("log_level")
    @classmethod
    def check_log_level(cls, value: str) -> str:
        level = value.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log level must be one of {', '.join(LOG_LEVELS)}")
        return level


_ENV_KEYS = {
    "log_level": "NEGINDEX_LOG_LEVEL",
    "default_format": "NEGINDEX_FORMAT",
    "default_max_grade": "NEGINDEX_MAX_GRADE",
    "default_seed": "NEGINDEX_SEED",
    "verify_workers": "NEGINDEX_VERIFY_WORKERS",
    "random_samples": "NEGINDEX_RANDOM_SAMPLES",
}


def load_settings() -> Settings:
    """Build settings from the environment (after .env has been loaded)."""
    values = {field: os.getenv(key) for field, key in _ENV_KEYS.items()}
    values = {field: value for field, value in values.items() if value is not None}
    try:
        return Settings(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Invalid configuration: {e}")


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    settings = load_settings()
    logger.debug(f"Loaded settings: {settings.model_dump()}")
    return settings
