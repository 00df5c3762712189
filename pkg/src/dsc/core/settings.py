# src/dsc/core/settings.py

import logging
import os
from typing import Annotated

from dotenv import find_dotenv
from pydantic import BeforeValidator, Field, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict

from dsc.core.enums import LogLevel


def check_log_level(value: object) -> str:
    """Accept DSC_LOG in any case; `warn` is an alias of `warning`."""
    text = str(value).strip().lower()
    if text == "warn":
        text = "warning"
    return text


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=find_dotenv(),
        env_prefix="",
        validate_default=True,
        extra="ignore",
    )

    DSC_LOG: Annotated[LogLevel, BeforeValidator(check_log_level)] = LogLevel.ERROR
    DSC_JOBS: int = Field(default_factory=lambda: os.cpu_count() or 1, ge=1)
    DSC_SEED: int = 0
    DSC_OUT: str = "out"

    # numerical defaults
    DSC_TRUNCATION: int = Field(default=10_000, ge=1)
    DSC_SAFE_DELTA: float = Field(default=1e-3, gt=0)
    DSC_NUDGE_BUDGET: int = Field(default=4096, ge=1)

    @computed_field
    def log_level(self) -> int:
        return logging.getLevelNamesMapping()[self.DSC_LOG.upper()]


settings = Settings()
