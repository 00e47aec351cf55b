"""Per-window sample statistics and the asymptotic theory they converge to.

Conventions, fixed throughout the package:

* The mean return m is the plain arithmetic average of the window.
* The volatility s uses the population normalization, s^2 = sum((eta - m)^2) / T,
  dividing by T and not T - 1. Most finance libraries default to T - 1;
  this one deliberately does not.
* The Sharpe ratio is S = sqrt(T) * m / s and is undefined at s = 0.
* The excess growth factor of a window is R = exp(m * T).

The asymptotic (large T) sampling distribution of S is normal with mean
sqrt(T) * mu / sigma and standard deviation sqrt(1 + S^2 / 2), the classic
Lo standard error.
"""

from __future__ import annotations

import datetime
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import stats as scipy_stats

from .errors import DegenerateVolatilityError, ValidationError

if TYPE_CHECKING:
    from .distributions import DistributionSpec


@dataclass(frozen=True)
class ReturnSeries:
    """An ordered window of per-period excess log-returns.

    `values` is stored as a read-only float64 copy. `dates` is optional;
    it is only needed by calendar-based windowing of ingested data.
    """

    values: np.ndarray
    periods_per_year: int = 252
    label: str | None = None
    dates: tuple[datetime.date, ...] | None = None

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64, copy=True)
        if arr.ndim != 1 or arr.size < 1:
            raise ValidationError("values must be a nonempty one-dimensional array")
        if not np.isfinite(arr).all():
            raise ValidationError("values must all be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        if self.periods_per_year < 1:
            raise ValidationError(
                f"periods_per_year must be >= 1, got {self.periods_per_year}"
            )
        if self.dates is not None:
            dates = tuple(self.dates)
            if len(dates) != arr.size:
                raise ValidationError("dates and values must have equal length")
            object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class SampleStats:
    """Summary of one window: mean return, volatility, Sharpe ratio, growth."""

    m: float
    s: float
    T: int
    sharpe: float
    growth: float


def mean_return(series: ReturnSeries) -> float:
    """Arithmetic mean of the window, m = sum(eta_t) / T."""
    return float(np.mean(series.values))


def volatility(series: ReturnSeries) -> float:
    """Population standard deviation, s = sqrt(sum((eta_t - m)^2) / T).

    Two-pass evaluation: the mean is removed before squaring. With mu
    around 1e-4 and sigma around 1e-2 the naive single-pass moment
    difference loses digits to cancellation; the two-pass form does not.
    """
    values = series.values
    m = np.mean(values)
    d = values - m
    return float(math.sqrt(np.dot(d, d) / values.size))


def sharpe(series: ReturnSeries) -> float:
    """Sharpe ratio S = sqrt(T) * m / s of one window."""
    s = volatility(series)
    if s == 0.0:
        raise DegenerateVolatilityError(
            "all returns in the window are equal; volatility is 0 and the "
            "Sharpe ratio is undefined"
        )
    return math.sqrt(len(series)) * mean_return(series) / s


def window_stats(series: ReturnSeries) -> SampleStats:
    """Full reduction of one window to SampleStats.

    Raises DegenerateVolatilityError when the window has zero volatility,
    rather than letting an infinite Sharpe ratio leak downstream.
    """
    values = series.values
    T = values.size
    m = float(np.mean(values))
    d = values - m
    s = float(math.sqrt(np.dot(d, d) / T))
    if s == 0.0:
        raise DegenerateVolatilityError(
            "all returns in the window are equal; volatility is 0 and the "
            "Sharpe ratio is undefined"
        )
    return SampleStats(
        m=m,
        s=s,
        T=int(T),
        sharpe=math.sqrt(T) * m / s,
        growth=growth_factor(m, int(T)),
    )


def lo_standard_error(S: float) -> float:
    """Asymptotic standard error sqrt(1 + S^2 / 2) of the Sharpe estimator."""
    if not math.isfinite(S):
        raise ValidationError(f"S must be finite, got {S!r}")
    return math.sqrt(1.0 + 0.5 * S * S)


def lo_asymptotic_density(spec: "DistributionSpec", T: int, x):
    """Asymptotic density of the sample Sharpe ratio at x.

    Normal with mean sqrt(T) * mu / sigma (the population Sharpe ratio of
    `spec`, identical to distributions.theoretical_sharpe) and standard
    deviation lo_standard_error of that mean. Accepts scalar or array x.
    """
    if T < 1:
        raise ValidationError(f"T must be >= 1, got {T}")
    mean = math.sqrt(T) * spec.mu / spec.sigma
    return scipy_stats.norm.pdf(x, loc=mean, scale=lo_standard_error(mean))


def growth_factor(m: float, T: int) -> float:
    """Excess growth factor R = exp(m * T) accumulated over the window."""
    if not math.isfinite(m):
        raise ValidationError(f"m must be finite, got {m!r}")
    return math.exp(m * T)
