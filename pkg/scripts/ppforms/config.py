"""Runtime settings for ppforms.

Settings come from four layers, later ones winning: built-in defaults, the YAML
file ``config/ppforms.yaml``, ``PPFORMS_*`` environment variables, and CLI flags
(applied by the caller through :func:`with_overrides`).
"""

from __future__ import annotations

import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal

from loguru import logger
from pydantic import BaseModel, Field, field_validator

from .common import DEFAULT_CONFIG_FILE, load_yaml_config

LogLevel = Literal["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR"]


class ToleranceSettings(BaseModel):
    """Absolute tolerances used by float-mode decisions."""

    residual: float = Field(1e-9, gt=0, le=1e-2)
    decision: float = Field(1e-6, gt=0, le=1e-1)


class DinewSettings(BaseModel):
    """Quadric minimization budget for the 6x6 criterion."""

    descent_steps: int = Field(200, ge=0, le=100_000)
    restarts: int = Field(32, ge=1, le=4096)
    polish_rounds: int = Field(25, ge=0, le=1000)
    initial_step: float = Field(0.25, gt=0, le=10)


class ReductionSettings(BaseModel):
    """Pair search budget for the (2,2) basis reduction."""

    max_attempts: int = Field(1000, ge=6, le=1_000_000)


class ZetaSettings(BaseModel):
    """Grid and restarts for the one-variable war2 search."""

    radii: list[float] = Field(default_factory=lambda: [0.0, 0.5, 1.0, 2.0, 4.0, 8.0])
    angles: int = Field(24, ge=1, le=4096)
    restarts: int = Field(4, ge=0, le=256)
    samples: int = Field(256, ge=0, le=1_000_000)

    @field_validator("radii")
    @classmethod
    def validate_radii(cls, v: list[float]) -> list[float]:
        """Radii must be nonnegative and non-empty"""
        if not v:
            raise ValueError("zeta.radii cannot be empty")
        if any(r < 0 for r in v):
            raise ValueError(f"zeta.radii must be nonnegative, got {v}")
        return v


class SuiteSettings(BaseModel):
    """Default instance counts per acceptance suite."""

    instances: dict[str, int] = Field(
        default_factory=lambda: {
            "oracle": 200,
            "alpha": 50,
            "lemma": 100,
            "thm4": 1000,
            "thm1": 500,
            "plucker": 500,
        }
    )

    @field_validator("instances")
    @classmethod
    def validate_counts(cls, v: dict[str, int]) -> dict[str, int]:
        """Instance counts must be positive"""
        bad = {k: n for k, n in v.items() if n < 1}
        if bad:
            raise ValueError(f"suite instance counts must be >= 1, got {bad}")
        return v


class PPFormsSettings(BaseModel):
    """Complete ppforms settings."""

    samples: int = Field(20_000, ge=1, le=100_000_000)
    seed: int = Field(0, ge=0)
    log_level: LogLevel = "INFO"
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    dinew: DinewSettings = Field(default_factory=DinewSettings)
    reduction: ReductionSettings = Field(default_factory=ReductionSettings)
    zeta: ZetaSettings = Field(default_factory=ZetaSettings)
    suites: SuiteSettings = Field(default_factory=SuiteSettings)

    def with_overrides(self, **overrides: Any) -> PPFormsSettings:
        """Return a copy with top-level fields replaced; ``None`` values are ignored.

        ``tol`` is accepted as a shorthand for ``tolerances.decision``.
        """
        update = {k: v for k, v in overrides.items() if v is not None}
        tol = update.pop("tol", None)
        merged = self.model_copy(update=update, deep=True)
        if tol is not None:
            merged.tolerances = ToleranceSettings(residual=merged.tolerances.residual, decision=tol)
        return PPFormsSettings.model_validate(merged.model_dump())


def load_env_overrides(env: Mapping[str, str] | None = None) -> dict[str, Any]:
    """Read and validate ``PPFORMS_*`` environment variables.

    Environment Variables:
        PPFORMS_SAMPLES: default sample count (>= 1)
        PPFORMS_SEED: default master seed (>= 0)
        PPFORMS_TOL: decision tolerance (0-0.1]
        PPFORMS_LOG_LEVEL: loguru level name

    Returns:
        Mapping of override field names to parsed values

    Raises:
        ValueError: If any variable is present but invalid
    """
    env = os.environ if env is None else env
    overrides: dict[str, Any] = {}

    raw = env.get("PPFORMS_SAMPLES")
    if raw is not None:
        try:
            samples = int(raw)
            if samples < 1:
                raise ValueError(f"SAMPLES must be >= 1, got {samples}")
        except ValueError as e:
            logger.error(f"Invalid PPFORMS_SAMPLES: {e}")
            raise ValueError(f"Invalid PPFORMS_SAMPLES: {e}") from None
        overrides["samples"] = samples

    raw = env.get("PPFORMS_SEED")
    if raw is not None:
        try:
            seed = int(raw)
            if seed < 0:
                raise ValueError(f"SEED must be >= 0, got {seed}")
        except ValueError as e:
            logger.error(f"Invalid PPFORMS_SEED: {e}")
            raise ValueError(f"Invalid PPFORMS_SEED: {e}") from None
        overrides["seed"] = seed

    raw = env.get("PPFORMS_TOL")
    if raw is not None:
        try:
            tol = float(raw)
            if not 0 < tol <= 0.1:
                raise ValueError(f"TOL must be in (0, 0.1], got {tol}")
        except ValueError as e:
            logger.error(f"Invalid PPFORMS_TOL: {e}")
            raise ValueError(f"Invalid PPFORMS_TOL: {e}") from None
        overrides["tol"] = tol

    raw = env.get("PPFORMS_LOG_LEVEL")
    if raw is not None:
        level = raw.strip().upper()
        if level not in LogLevel.__args__:  # type: ignore[attr-defined]
            logger.error(f"Invalid PPFORMS_LOG_LEVEL: {raw}")
            raise ValueError(f"Invalid PPFORMS_LOG_LEVEL: {raw}")
        overrides["log_level"] = level

    return overrides


def load_settings(
    config_path: Path | str | None = None, env: Mapping[str, str] | None = None
) -> PPFormsSettings:
    """Build settings from YAML and environment.

    Args:
        config_path: YAML file; defaults to ``$PPFORMS_CONFIG`` or config/ppforms.yaml.
            A missing default file falls back to built-in defaults; a missing
            explicitly requested file is an error.
        env: Environment mapping (defaults to ``os.environ``)

    Raises:
        FileNotFoundError: Explicit config path does not exist
        pydantic.ValidationError: YAML content fails validation
        ValueError: Environment override is invalid
    """
    env = os.environ if env is None else env
    explicit = config_path is not None or "PPFORMS_CONFIG" in env
    path = config_path if config_path is not None else env.get("PPFORMS_CONFIG", DEFAULT_CONFIG_FILE)

    data: dict[str, Any] = {}
    try:
        data = load_yaml_config(path)
    except FileNotFoundError:
        if explicit:
            raise
        logger.debug("No settings file found, using built-in defaults", path=str(path))

    settings = PPFormsSettings.model_validate(data)
    return settings.with_overrides(**load_env_overrides(env))
