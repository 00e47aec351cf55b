"""Generative models for per-period excess log-returns.

Two location-scale families are supported:

* gaussian: eta = mu + sigma * z with z standard normal.
* student: eta = mu + sigma * sqrt((nu - 2) / nu) * xi with xi standard
  Student-t with nu degrees of freedom. The sqrt((nu - 2) / nu) factor
  normalizes the variance, so both families have exact mean mu and exact
  standard deviation sigma. It requires nu > 2.

Draws come from an explicit RandomStream; there is no global RNG state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as scipy_stats

from .errors import ValidationError
from .randomness import RandomStream
from .stats import ReturnSeries

GAUSSIAN = "gaussian"
STUDENT = "student"

_FAMILIES = (GAUSSIAN, STUDENT)


@dataclass(frozen=True)
class DistributionSpec:
    """Parameters of a return model.

    Inputs
    ------
    family : str
        Either "gaussian" or "student".
    mu : float
        Per-period mean excess log-return.
    sigma : float
        Per-period standard deviation, > 0.
    nu : float, optional
        Tail index; present exactly when family is "student" and then > 2
        (the variance normalization is undefined at nu <= 2).
    """

    family: str
    mu: float
    sigma: float
    nu: float | None = None

    def __post_init__(self) -> None:
        if self.family not in _FAMILIES:
            raise ValidationError(
                f"family must be one of {_FAMILIES}, got {self.family!r}"
            )
        if not math.isfinite(self.mu):
            raise ValidationError(f"mu must be finite, got {self.mu!r}")
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValidationError(f"sigma must be finite and > 0, got {self.sigma!r}")
        if self.family == STUDENT:
            if self.nu is None:
                raise ValidationError("student family requires nu")
            if not (math.isfinite(self.nu) and self.nu > 2):
                raise ValidationError(
                    f"nu must be finite and > 2 for the variance-normalized "
                    f"student model, got {self.nu!r}"
                )
        elif self.nu is not None:
            raise ValidationError("nu is only meaningful for the student family")

    @property
    def scale(self) -> float:
        """Scale applied to the standard variate so that std(eta) = sigma."""
        if self.family == STUDENT:
            return self.sigma * math.sqrt((self.nu - 2.0) / self.nu)
        return self.sigma


def sample_returns(spec: DistributionSpec, T: int, stream: RandomStream) -> ReturnSeries:
    """Draw T independent per-period returns from `spec`.

    Deterministic in (spec, T, stream): the same stream address always
    yields the same series, bit for bit.
    """
    if T < 1:
        raise ValidationError(f"T must be >= 1, got {T}")
    rng = stream.generator()
    if spec.family == GAUSSIAN:
        draws = spec.mu + spec.sigma * rng.standard_normal(T)
    else:
        # standard_t is exact in distribution (normal over scaled chi), not
        # an approximation; tail fidelity matters here.
        draws = spec.mu + spec.scale * rng.standard_t(spec.nu, T)
    return ReturnSeries(values=draws)


def density(spec: DistributionSpec, x):
    """Probability density of a single per-period return at x.

    Accepts a scalar or an array; returns the same shape. The student
    density is the standard t(nu) density shifted by mu and rescaled by
    sigma * sqrt((nu - 2) / nu), so it integrates to 1 and has tails
    decaying like |x|^-(nu + 1).
    """
    if spec.family == GAUSSIAN:
        return scipy_stats.norm.pdf(x, loc=spec.mu, scale=spec.sigma)
    return scipy_stats.t.pdf(x, spec.nu, loc=spec.mu, scale=spec.scale)


def theoretical_sharpe(spec: DistributionSpec, T: int) -> float:
    """Population Sharpe ratio sqrt(T) * mu / sigma of a T-period window."""
    if T < 1:
        raise ValidationError(f"T must be >= 1, got {T}")
    return math.sqrt(T) * spec.mu / spec.sigma
