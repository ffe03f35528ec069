# File: app/core/config.py
"""
Application Configuration
"""
from __future__ import annotations

from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.services.densela.types import Tolerances


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        case_sensitive=True,
    )

    # App
    APP_NAME: str = Field(default="gencrit")
    ENV: Literal["dev", "staging", "prod"] = Field(default="dev")

    # Logging
    LOG_LEVEL: str = Field(default="WARNING")
    LOG_JSON: bool = Field(default=False, description="JSON-lines log records")

    # Tolerances
    RANK_REL: float = Field(default=1e-10, gt=0, description="Relative SV cutoff")
    RESIDUAL_ABS: float = Field(default=1e-8, gt=0)
    ORTHO_TOL: float = Field(default=1e-12, gt=0)

    # Generalized-regularity probes
    PROBES: int = Field(default=64, ge=0)
    PROBE_RADIUS: float = Field(default=1e-3, gt=0)
    SEED: int = Field(default=0)

    # Solver
    MAX_ITER: int = Field(default=100, ge=1)

    # Paper suite
    SUITE_WORKERS: int | None = Field(
        default=4,
        description="If None -> run fixtures sequentially",
    )

    def tolerances(self) -> Tolerances:
        return Tolerances(
            rank_rel=self.RANK_REL,
            residual_abs=self.RESIDUAL_ABS,
            ortho=self.ORTHO_TOL,
        )


settings = Settings()
