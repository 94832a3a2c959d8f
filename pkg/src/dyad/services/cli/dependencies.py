import os
from functools import lru_cache
from typing import Literal

from pydantic import BaseModel, Field


class Settings(BaseModel):
    """Process-level defaults; command-line flags take precedence."""

    threads: int = Field(1, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = (
        "WARNING"
    )
    output_format: Literal["csv", "json"] = "csv"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Get or create the settings instance from the environment (singleton)."""
    return Settings.model_validate(
        {
            "threads": os.getenv("DYAD_THREADS", "1"),
            "log_level": os.getenv("DYAD_LOG_LEVEL", "WARNING").upper(),
            "output_format": os.getenv("DYAD_OUTPUT_FORMAT", "csv").lower(),
        }
    )
