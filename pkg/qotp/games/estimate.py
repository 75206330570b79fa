from __future__ import annotations

import math
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator
from scipy import stats

DEFAULT_CONFIDENCE = 0.95


def normal_quantile(confidence: float) -> float:
    return float(stats.norm.ppf(0.5 + confidence / 2.0))


def wilson_interval(wins: int, trials: int, confidence: float = DEFAULT_CONFIDENCE) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    z = normal_quantile(confidence)
    p = wins / trials
    denom = 1.0 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, min(p, center - half)), min(1.0, max(p, center + half))


class AdvantageEstimate(BaseModel):
    """
    Aggregated outcome of repeated game runs.

    Win/loss games carry ``wins`` and a Wilson interval. Real-valued
    experiments (exact per-trial advantages) carry ``wins=None`` and a normal
    interval around the sample mean.
    """

    game: str
    params: Dict[str, Any] = Field(default_factory=dict)
    trials: int = Field(gt=0)
    wins: Optional[int] = None
    estimate: float = Field(ge=0.0, le=1.0)
    ci_lo: float = Field(ge=0.0, le=1.0)
    ci_hi: float = Field(ge=0.0, le=1.0)
    confidence: float = DEFAULT_CONFIDENCE

    @model_validator(mode="after")
    def _interval_contains_estimate(self) -> "AdvantageEstimate":
        if not self.ci_lo - 1e-12 <= self.estimate <= self.ci_hi + 1e-12:
            raise ValueError(f"interval [{self.ci_lo}, {self.ci_hi}] does not contain {self.estimate}")
        return self

    @classmethod
    def from_counts(
        cls,
        game: str,
        wins: int,
        trials: int,
        params: Optional[Dict[str, Any]] = None,
        confidence: float = DEFAULT_CONFIDENCE,
    ) -> "AdvantageEstimate":
        lo, hi = wilson_interval(wins, trials, confidence)
        return cls(
            game=game,
            params=params or {},
            trials=trials,
            wins=wins,
            estimate=wins / trials,
            ci_lo=lo,
            ci_hi=hi,
            confidence=confidence,
        )

    @classmethod
    def from_samples(
        cls,
        game: str,
        samples: Sequence[float],
        params: Optional[Dict[str, Any]] = None,
        confidence: float = DEFAULT_CONFIDENCE,
    ) -> "AdvantageEstimate":
        values = np.clip(np.asarray(samples, dtype=np.float64), 0.0, 1.0)
        if values.size == 0:
            raise ValueError("samples must be nonempty")
        mean = float(values.mean())
        sem = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else 0.0
        half = normal_quantile(confidence) * sem
        return cls(
            game=game,
            params=params or {},
            trials=int(values.size),
            wins=None,
            estimate=mean,
            ci_lo=max(0.0, mean - half),
            ci_hi=min(1.0, mean + half),
            confidence=confidence,
        )

    @property
    def sigma(self) -> float:
        """Binomial standard error at the point estimate."""
        return math.sqrt(self.estimate * (1.0 - self.estimate) / self.trials)

    def contains(self, value: float) -> bool:
        return self.ci_lo <= value <= self.ci_hi


def fit_bound_constant(
    estimates: Iterable[AdvantageEstimate], tau_key: str = "tau", max_tau: Optional[float] = None
) -> float:
    """
    Smallest ``C`` with ``estimate <= C * 2**-tau`` at every fitted point.

    Each estimate must carry its min-entropy under ``params[tau_key]``. With
    ``max_tau`` only points at or below it are fitted, so the remaining points
    can be checked against the constant with :func:`bound_violations`.

    :raises ValueError: If no estimate is left to fit.
    """
    fitted = [
        est.estimate * 2.0 ** float(est.params[tau_key])
        for est in estimates
        if max_tau is None or float(est.params[tau_key]) <= max_tau
    ]
    if not fitted:
        raise ValueError("No estimates to fit a bound constant on")
    return max(fitted)


def bound_violations(
    estimates: Iterable[AdvantageEstimate], constant: float, tau_key: str = "tau"
) -> List[AdvantageEstimate]:
    """Estimates lying above ``constant * 2**-tau``."""
    return [est for est in estimates if est.estimate > constant * 2.0 ** -float(est.params[tau_key])]
