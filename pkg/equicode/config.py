"""
Configuration loading and enumeration guards.

Settings come from config.yaml next to this module, with built-in defaults
when the file is missing. The EQUICODE_MAX_ENUM environment variable
overrides limits.max_enum at call time.
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

from .errors import TooLarge

logger = logging.getLogger(__name__)

ENV_MAX_ENUM = "EQUICODE_MAX_ENUM"


class Limits(BaseModel):
    """Bounds on brute-force work."""

    max_enum: int = Field(default=10_000_000, ge=1)
    max_group_order: int = Field(default=10_080, ge=1)
    max_span: int = Field(default=1_000_000, ge=1)

    model_config = ConfigDict(frozen=True)


class ThetaSettings(BaseModel):
    default_cutoff: int = Field(default=8, ge=0)
    genus2_cutoff: int = Field(default=4, ge=0)
    ball_radius: int = Field(default=6, ge=0)

    model_config = ConfigDict(frozen=True)


class JacobiFormulaSettings(BaseModel):
    default_tol: float = Field(default=1e-9, gt=0)
    precision_digits: int = Field(default=30, ge=15)
    safety_factor: float = Field(default=2.0, gt=1.0)
    max_widenings: int = Field(default=4, ge=1)

    model_config = ConfigDict(frozen=True)


class SweepSettings(BaseModel):
    """Shape of the random instances generated by the verification sweep."""

    moduli: List[int] = Field(default_factory=lambda: [2, 3, 4, 5, 6])
    max_length: int = Field(default=5, ge=1)
    subgroup_orders: List[int] = Field(default_factory=lambda: [2, 3])
    instances: int = Field(default=200, ge=1)
    flavor_instances: int = Field(default=50, ge=1)
    cweg_max_variables: int = Field(default=16, ge=1)
    cweg_max_orbits: int = Field(default=3, ge=1)
    harmonic_max_degree: int = Field(default=2, ge=0)
    oracle_max_words: int = Field(default=100_000, ge=1)
    theta_cutoff: int = Field(default=8, ge=0)
    overgroup_rate: float = Field(default=0.5, ge=0.0, le=1.0)
    max_draws_factor: int = Field(default=10, ge=1)

    model_config = ConfigDict(frozen=True)


class ToolkitConfig(BaseModel):
    limits: Limits = Field(default_factory=Limits)
    theta: ThetaSettings = Field(default_factory=ThetaSettings)
    jacobi_formula: JacobiFormulaSettings = Field(default_factory=JacobiFormulaSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)

    model_config = ConfigDict(frozen=True)


@lru_cache(maxsize=1)
def load_config() -> Dict[str, Any]:
    """Load configuration from config.yaml file."""
    config_path = Path(__file__).parent / "config.yaml"

    try:
        with open(config_path, "r") as f:
            config = yaml.safe_load(f) or {}
        return config
    except FileNotFoundError:
        logger.warning(f"{config_path} not found, using built-in defaults")
        return {
            "limits": {
                "max_enum": 10_000_000,
                "max_group_order": 10_080,
                "max_span": 1_000_000,
            },
            "theta": {"default_cutoff": 8, "genus2_cutoff": 4, "ball_radius": 6},
            "jacobi_formula": {
                "default_tol": 1e-9,
                "precision_digits": 30,
                "safety_factor": 2.0,
                "max_widenings": 4,
            },
            "sweep": {},
        }


def get_config() -> ToolkitConfig:
    """Validated configuration with the environment override applied."""
    raw = dict(load_config())
    limits = dict(raw.get("limits") or {})
    env_value = os.environ.get(ENV_MAX_ENUM)
    if env_value:
        try:
            limits["max_enum"] = int(env_value)
        except ValueError:
            logger.warning(f"Ignoring non-integer {ENV_MAX_ENUM}={env_value!r}")
    raw["limits"] = limits
    return ToolkitConfig.model_validate(raw)


def enumeration_limit(override: Optional[int] = None) -> int:
    """The k^n-style guard in effect: explicit override, then env, then file."""
    if override is not None:
        return override
    return get_config().limits.max_enum


def guard_enumeration(size: int, what: str, max_enum: Optional[int] = None) -> None:
    """Raise TooLarge when an enumeration of `size` items exceeds the limit."""
    limit = enumeration_limit(max_enum)
    if size > limit:
        raise TooLarge(f"{what}: {size} items exceeds enumeration limit {limit}")
    logger.debug(f"{what}: enumerating {size} items")
