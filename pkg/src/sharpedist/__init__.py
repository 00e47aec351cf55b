"""Joint sampling distribution of mean return, volatility and Sharpe ratio.

The package simulates N independent T-period windows of excess returns
under Gaussian or variance-normalized Student-t models, reduces each
window to (mean return, volatility, Sharpe ratio, growth factor), and
analyzes how those statistics move together: exceedance fractions,
mean/volatility dependence, tail association and the conditional mean
Sharpe curve. A CSV ingestion path applies the same reductions to real
price panels. The `sharpedist` command line exposes all of it.
"""

__version__ = "0.1.0"

from .conditional import (
    DECREASING,
    INCREASING,
    NON_MONOTONIC,
    ConditionalCurve,
    MonotonicityReport,
    conditional_sharpe,
    curve_peak,
    default_threshold_grid,
    monotonicity_report,
    read_curve_csv,
    write_curve_csv,
    write_curve_json,
)
from .distributions import (
    GAUSSIAN,
    STUDENT,
    DistributionSpec,
    density,
    sample_returns,
    theoretical_sharpe,
)
from .errors import DataError, DegenerateVolatilityError, ValidationError
from .ingestion import (
    CALENDAR_YEAR,
    ROLLING_BLOCK,
    DatedReturns,
    PanelResult,
    PriceSeries,
    RiskfreeCurve,
    excess_returns,
    load_price_csv,
    load_riskfree_csv,
    log_returns,
    panel_stats,
    windows,
)
from .montecarlo import (
    Histogram,
    JointSampleSet,
    exceedance_fraction,
    histogram,
    pearson_correlation,
    read_samples_csv,
    read_samples_json,
    simulate_joint,
    tail_association,
    write_samples_csv,
    write_samples_json,
)
from .randomness import RandomStream
from .stats import (
    ReturnSeries,
    SampleStats,
    growth_factor,
    lo_asymptotic_density,
    lo_standard_error,
    mean_return,
    sharpe,
    volatility,
    window_stats,
)

__all__ = [
    "__version__",
    "ValidationError", "DegenerateVolatilityError", "DataError",
    "RandomStream",
    "GAUSSIAN", "STUDENT", "DistributionSpec",
    "sample_returns", "density", "theoretical_sharpe",
    "ReturnSeries", "SampleStats",
    "mean_return", "volatility", "sharpe", "window_stats",
    "lo_standard_error", "lo_asymptotic_density", "growth_factor",
    "JointSampleSet", "Histogram",
    "simulate_joint", "exceedance_fraction", "pearson_correlation",
    "histogram", "tail_association",
    "write_samples_csv", "write_samples_json",
    "read_samples_csv", "read_samples_json",
    "ConditionalCurve", "MonotonicityReport",
    "INCREASING", "NON_MONOTONIC", "DECREASING",
    "conditional_sharpe", "default_threshold_grid",
    "curve_peak", "monotonicity_report",
    "write_curve_csv", "write_curve_json", "read_curve_csv",
    "PriceSeries", "RiskfreeCurve", "DatedReturns", "PanelResult",
    "ROLLING_BLOCK", "CALENDAR_YEAR",
    "load_price_csv", "load_riskfree_csv",
    "log_returns", "excess_returns", "windows", "panel_stats",
]
