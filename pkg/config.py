# config.py
"""Tolerance table and run configuration.

Defaults come from the numerical contracts of each module. Any tolerance can be
overridden through the environment (``DUNKL_TOL_<FIELD>``, a ``.env`` file is
honoured) or explicitly through ``load_tolerances(overrides)``.
"""
import logging
import os
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from errors import ConfigError

load_dotenv()

logger = logging.getLogger(__name__)

ENV_PREFIX = "DUNKL_TOL_"


class Tolerances(BaseModel):
    """Single source of truth for tolerances and numerical knobs."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    # special functions
    bessel_zero_abs: float = Field(1e-12, gt=0)
    zero_residual: float = Field(1e-12, gt=0)
    parity_law_rel: float = Field(1e-13, gt=0)
    recurrence_rel: float = Field(1e-11, gt=0)
    jacobi_rel: float = Field(1e-10, gt=0)
    # operator identities
    derivative_identity: float = Field(1e-7, gt=0)
    second_order_identity: float = Field(1e-5, gt=0)
    # eigenproblems
    eigen_residual: float = Field(1e-5, gt=0)
    boundary: float = Field(1e-10, gt=0)
    parity_rel: float = Field(1e-12, gt=0)
    orthonormality: float = Field(1e-8, gt=0)
    normalization: float = Field(1e-8, gt=0)
    energy_identity_rel: float = Field(1e-15, gt=0)
    degeneracy_rel: float = Field(1e-12, gt=0)
    # numerics
    fd_step: float = Field(1e-3, ge=1e-7, le=1e-3)
    fd_stencil: int = 5
    quad_abs: float = Field(1e-12, gt=0)
    quad_limit: int = Field(200, ge=10)
    max_twoell: int = Field(40, ge=0)

    @field_validator("fd_stencil")
    @classmethod
    def _check_stencil(cls, value):
        if value not in (3, 5):
            raise ValueError("fd_stencil must be 3 or 5")
        return value


def load_tolerances(overrides: Optional[Dict[str, object]] = None) -> Tolerances:
    """Build the tolerance table from defaults, environment and explicit overrides."""
    values: Dict[str, object] = {}
    for name in Tolerances.model_fields:
        env_value = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if env_value is not None:
            values[name] = env_value
    if overrides:
        unknown = sorted(set(overrides) - set(Tolerances.model_fields))
        if unknown:
            raise ConfigError(f"unknown tolerance name(s): {', '.join(unknown)}")
        values.update(overrides)
    return Tolerances(**values)


_DEFAULT_TOLERANCES: Optional[Tolerances] = None


def get_tolerances() -> Tolerances:
    """Process-wide default table (environment applied once)."""
    global _DEFAULT_TOLERANCES
    if _DEFAULT_TOLERANCES is None:
        _DEFAULT_TOLERANCES = load_tolerances()
    return _DEFAULT_TOLERANCES


def set_tolerances(table: Optional[Tolerances]) -> None:
    """Install a process-wide table; None restores the environment defaults on next use."""
    global _DEFAULT_TOLERANCES
    _DEFAULT_TOLERANCES = table


def _split(value: str, sep: str = ",") -> List[str]:
    return [item.strip() for item in value.split(sep) if item.strip()]


class RunConfig(BaseModel):
    """Validated configuration of one CLI run."""

    model_config = ConfigDict(extra="forbid")

    r_c: float = Field(10.0, gt=0)
    h_half: float = Field(15.0, gt=0)
    geometry: Literal["finite", "infinite"] = "finite"
    parity: Optional[List[Tuple[int, int, int]]] = None
    max_order_n: int = Field(5, ge=0)
    max_m: int = Field(5, ge=0)
    max_n: int = Field(3, ge=1)
    max_n_prime: int = Field(3, ge=1)
    k_grid: List[float] = Field(default_factory=list)
    orders: List[int] = Field(default_factory=list)
    dunkl_sum: Optional[int] = Field(None, ge=0)
    dunkl_m: Optional[int] = Field(None, ge=0)
    format: Literal["csv", "json"] = "csv"
    output: Optional[Path] = None
    tolerances: Dict[str, float] = Field(default_factory=dict)
    seed: int = 1729
    workers: int = Field(1, ge=1)

    @field_validator("parity", mode="before")
    @classmethod
    def _parse_parity(cls, value):
        if value is None or value == "":
            return None
        if isinstance(value, str):
            value = _split(value, ";")
        triples = []
        for item in value:
            if isinstance(item, str):
                item = [int(part) for part in _split(item)]
            triples.append(tuple(item))
        return triples

    @field_validator("parity")
    @classmethod
    def _check_parity(cls, value):
        for triple in value or []:
            if len(triple) != 3 or any(r not in (1, -1) for r in triple):
                raise ValueError(f"parity triple must hold three values of +1/-1, got {triple}")
        return value

    @field_validator("k_grid", mode="before")
    @classmethod
    def _parse_k_grid(cls, value):
        if isinstance(value, str):
            return [float(item) for item in _split(value)]
        return value

    @field_validator("orders", mode="before")
    @classmethod
    def _parse_orders(cls, value):
        if isinstance(value, str):
            return [int(item) for item in _split(value)]
        return value

    @field_validator("orders")
    @classmethod
    def _check_orders(cls, value):
        if any(order < 0 for order in value):
            raise ValueError("orders must be nonnegative")
        return value

    @field_validator("tolerances", mode="before")
    @classmethod
    def _parse_tolerances(cls, value):
        if isinstance(value, str):
            parsed = {}
            for item in _split(value):
                name, _, number = item.partition("=")
                parsed[name.strip()] = float(number)
            return parsed
        return value

    @model_validator(mode="after")
    def _check_geometry(self):
        if self.geometry == "infinite":
            if not self.k_grid:
                raise ValueError("infinite geometry needs a non-empty k grid")
            if any(k <= 0 for k in self.k_grid):
                raise ValueError("k grid values must be positive")
        unknown = set(self.tolerances) - set(Tolerances.model_fields)
        if unknown:
            raise ValueError(f"unknown tolerance name(s): {', '.join(sorted(unknown))}")
        return self

    def tolerance_table(self) -> Tolerances:
        return load_tolerances(self.tolerances)


def load_run_config(config_file: Optional[Path], overrides: Dict[str, object]) -> RunConfig:
    """Merge a key=value config file with command-line overrides; flags win."""
    values: Dict[str, object] = {}
    if config_file is not None:
        path = Path(config_file)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        for key, raw in dotenv_values(path).items():
            if raw is not None:
                values[key.strip().lower()] = raw
        logger.debug("Loaded %d keys from %s", len(values), path)
    values.update({key: value for key, value in overrides.items() if value is not None})
    return RunConfig.model_validate(values)
