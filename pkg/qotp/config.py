"""
Experiment configuration.

One YAML file holds every setting; command-line flags override file values.
``QOTP_CONFIG`` (read from the environment or a ``.env`` file) names the file
used when no ``--config`` flag is given.
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from qotp.exceptions import ConfigError
from qotp.games.bb_otp import BB_OTP_ADVERSARIES
from qotp.games.forgery import DEFAULT_VERIFY_BUDGET, FORGERY_ADVERSARIES, ForgeryPredicate
from qotp.games.sweep import GridPoint
from qotp.oracle.provider import DEFAULT_ORACLE_MODE
from qotp.otp.programs import PROGRAM_FACTORIES, SHIPPED_TABLES
from qotp.utils.tools import SEED_MASK, canonical_json, dict_md5

load_dotenv()

CONFIG_ENV_VAR = "QOTP_CONFIG"

Command = Literal["demo", "game", "entropy", "report"]


class ExperimentConfig(BaseModel):
    """
    Everything a run depends on. Two equal configs produce byte-identical artifacts.

    ``lambdas`` is the λ grid of a game sweep; single-λ commands use its first
    entry. ``k_values`` is the grid of the ``collapse-k`` program family.
    """

    model_config = ConfigDict(extra="forbid")

    command: Command = "game"
    seed: int = Field(default=0, ge=0, le=SEED_MASK)
    lambdas: List[int] = Field(default_factory=lambda: [4])
    ell: int = Field(default=1, ge=1)
    game: Literal["forgery", "bbotp", "rewind", "collapse", "reduction"] = "forgery"
    adversary: Optional[str] = None
    predicate: ForgeryPredicate = ForgeryPredicate.STRONG
    program: str = "identity-x"
    program_params: Dict[str, Any] = Field(default_factory=dict)
    k_values: List[int] = Field(default_factory=lambda: [0, 1, 2, 3, 4])
    mode: Literal["classical", "statevector"] = "classical"
    trials: int = Field(default=1000, ge=1)
    q_verify_max: int = Field(default=DEFAULT_VERIFY_BUDGET, ge=0)
    reject_zero_tag: bool = True
    oracle_mode: Literal["lazy", "keyed"] = DEFAULT_ORACLE_MODE
    workers: int = Field(default=1, ge=1)
    out: str = "results"

    @field_validator("lambdas")
    @classmethod
    def _even_lambdas(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("lambdas must be nonempty")
        for lam in value:
            if lam < 2 or lam % 2:
                raise ValueError(f"lambda must be even and >= 2, got {lam}")
        return value

    @field_validator("program")
    @classmethod
    def _known_program(cls, value: str) -> str:
        if value in PROGRAM_FACTORIES:
            return value
        if value.startswith("table:"):
            if value.split(":", 1)[1] not in SHIPPED_TABLES:
                raise ValueError(f"unknown shipped table '{value}', expected table:<one of {SHIPPED_TABLES}>")
            return value
        if value.endswith(".tt"):
            if not Path(value).is_file():
                raise ValueError(f"truth-table file {value} does not exist")
            return value
        raise ValueError(f"unknown program '{value}', expected one of {sorted(PROGRAM_FACTORIES)}, table:<name> or a .tt path")

    @model_validator(mode="after")
    def _known_adversary(self) -> "ExperimentConfig":
        if self.adversary is None:
            return self
        known = FORGERY_ADVERSARIES if self.game == "forgery" else BB_OTP_ADVERSARIES
        if self.game in ("rewind", "collapse") or self.adversary not in known:
            raise ValueError(f"adversary '{self.adversary}' does not apply to game '{self.game}'")
        return self

    @property
    def lam(self) -> int:
        return self.lambdas[0]

    def provenance(self) -> Dict[str, Any]:
        return self.model_dump(mode="json")

    def fingerprint(self) -> str:
        return dict_md5(self.provenance())

    def provenance_header(self) -> str:
        """Comment lines identifying the config that produced an artifact."""
        return f"# config {canonical_json(self.provenance())}\n# md5 {self.fingerprint()}\n"

    def grid(self) -> List[GridPoint]:
        """The sweep grid for :func:`qotp.games.estimate_advantage_curve`."""
        if self.game == "forgery":
            return [
                {
                    "lam": lam,
                    "ell": self.ell,
                    "predicate": self.predicate.value,
                    "q_verify_max": self.q_verify_max,
                    "representation": self.mode,
                    "reject_zero_tag": self.reject_zero_tag,
                }
                for lam in self.lambdas
            ]
        if self.game == "collapse":
            if self.program == "collapse-k":
                return [
                    {"program": self.program, "program_params": {**self.program_params, "k": k}, "oracle_mode": self.oracle_mode}
                    for k in self.k_values
                ]
            return [{"program": self.program, "program_params": dict(self.program_params), "oracle_mode": self.oracle_mode}]
        return [
            {
                "lam": lam,
                "program": self.program,
                "program_params": dict(self.program_params),
                "reject_zero_tag": self.reject_zero_tag,
                "oracle_mode": self.oracle_mode,
            }
            for lam in self.lambdas
        ]


def _read_yaml(path: Union[str, Path]) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Config file {path} is not valid YAML: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Config file {path} must hold a mapping")
    return data


def load_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Build a validated config from a YAML file plus overrides.

    ``overrides`` entries set to ``None`` are ignored, so unset CLI flags
    leave file values alone.

    :raises ConfigError: On unreadable files or invalid values.
    """
    path = path or os.getenv(CONFIG_ENV_VAR)
    data: Dict[str, Any] = _read_yaml(path) if path else {}
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    try:
        return ExperimentConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
