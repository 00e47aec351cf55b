"""Conditional Sharpe curve: mean Sharpe ratio of samples with m >= threshold.

The curve's shape separates return models. Under Gaussian returns the
conditional mean Sharpe keeps rising with the return threshold. Under heavy
tails it rises and then falls: the windows with the very best mean returns
owe them to one outlier that also inflates volatility, dragging their
Sharpe ratios below the interior peak.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import DataError, ValidationError
from .montecarlo import JointSampleSet

INCREASING = "increasing"
NON_MONOTONIC = "non_monotonic"
DECREASING = "decreasing"

SCHEMA_CURVE = "sharpedist.curve/1"


@dataclass(frozen=True)
class ConditionalCurve:
    """S-bar(m) over an ordered threshold grid.

    `values` is NaN exactly where `counts` is 0 (no qualifying samples);
    undefined entries are explicit, never silently zero. `standard_errors`
    holds the standard error of each conditional mean (NaN when undefined).
    """

    thresholds: np.ndarray
    values: np.ndarray
    counts: np.ndarray
    standard_errors: np.ndarray

    def __post_init__(self) -> None:
        th = np.array(self.thresholds, dtype=np.float64, copy=True)
        vals = np.array(self.values, dtype=np.float64, copy=True)
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        ses = np.array(self.standard_errors, dtype=np.float64, copy=True)
        n = th.size
        if th.ndim != 1 or n < 1:
            raise ValidationError("thresholds must be a nonempty 1-d array")
        if vals.shape != th.shape or counts.shape != th.shape or ses.shape != th.shape:
            raise ValidationError("curve columns must have equal length")
        if n > 1 and (np.diff(th) <= 0).any():
            raise ValidationError("thresholds must be strictly increasing")
        if (counts < 0).any():
            raise ValidationError("counts must be non-negative")
        if n > 1 and (np.diff(counts) > 0).any():
            raise ValidationError("counts must be non-increasing in threshold")
        empty = counts == 0
        if (np.isnan(vals) != empty).any():
            raise ValidationError("values must be NaN exactly where count is 0")
        if (np.isnan(ses) != empty).any():
            raise ValidationError("standard_errors must be NaN exactly where count is 0")
        for arr, name in ((th, "thresholds"), (vals, "values"),
                          (counts, "counts"), (ses, "standard_errors")):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def defined(self) -> np.ndarray:
        """Boolean mask of thresholds with at least one qualifying sample."""
        return self.counts > 0

    def __len__(self) -> int:
        return int(self.thresholds.size)


@dataclass(frozen=True)
class MonotonicityReport:
    """Shape classification of a conditional curve.

    classification is one of INCREASING, NON_MONOTONIC, DECREASING.
    `entries` is the number of thresholds that met the min_count guard;
    `tolerance` is the slack actually used.
    """

    classification: str
    peak_threshold: float
    peak_value: float
    tolerance: float
    entries: int


def conditional_sharpe(sample_set: JointSampleSet, thresholds) -> ConditionalCurve:
    """Evaluate S-bar(m_i) = mean(sharpe | m >= m_i) over a threshold grid.

    Uses suffix sums over samples sorted by (m, sharpe), so the result is
    independent of the input sample order, bit for bit.
    """
    if sample_set.N == 0:
        raise ValidationError("sample set is empty")
    th = np.asarray(thresholds, dtype=np.float64)
    if th.ndim != 1 or th.size < 1:
        raise ValidationError("thresholds must be a nonempty 1-d array")
    if th.size > 1 and (np.diff(th) <= 0).any():
        raise ValidationError("thresholds must be strictly increasing")

    order = np.lexsort((sample_set.sharpe, sample_set.m))
    sm = sample_set.m[order]
    ss = sample_set.sharpe[order]

    # suffix[i] = sum of ss[i:]; one extra zero so counts of 0 index cleanly
    suffix1 = np.concatenate([np.cumsum(ss[::-1])[::-1], [0.0]])
    suffix2 = np.concatenate([np.cumsum((ss * ss)[::-1])[::-1], [0.0]])

    start = np.searchsorted(sm, th, side="left")
    counts = sample_set.N - start

    values = np.full(th.size, np.nan)
    ses = np.full(th.size, np.nan)
    nonempty = counts > 0
    c = counts[nonempty].astype(np.float64)
    means = suffix1[start[nonempty]] / c
    values[nonempty] = means
    # variance of the conditional mean; clip tiny negatives from cancellation
    var = np.maximum(suffix2[start[nonempty]] / c - means * means, 0.0) / c
    ses[nonempty] = np.sqrt(var)
    return ConditionalCurve(
        thresholds=th, values=values, counts=counts, standard_errors=ses
    )


def default_threshold_grid(
    sample_set: JointSampleSet, points: int, upper_quantile: float = 0.9999
) -> np.ndarray:
    """Equally spaced grid from min(m) to the upper_quantile of m.

    Capping at a high quantile rather than max(m) keeps a usable number of
    samples behind the last thresholds instead of a single extreme one.
    """
    if sample_set.N == 0:
        raise ValidationError("sample set is empty")
    if points < 2:
        raise ValidationError(f"points must be >= 2, got {points}")
    if not (0.0 < upper_quantile <= 1.0):
        raise ValidationError(
            f"upper_quantile must be in (0, 1], got {upper_quantile}"
        )
    lo = float(sample_set.m.min())
    hi = float(np.quantile(sample_set.m, upper_quantile))
    if not (hi > lo):
        raise ValidationError(
            "degenerate m range; cannot build a strictly increasing grid"
        )
    return np.linspace(lo, hi, points)


def curve_peak(curve: ConditionalCurve) -> tuple[float, float]:
    """(threshold, value) of the largest defined curve value.

    Ties resolve to the smallest threshold.
    """
    defined = curve.defined
    if not defined.any():
        raise ValidationError("curve has no defined values")
    masked = np.where(defined, curve.values, -np.inf)
    i = int(np.argmax(masked))
    return float(curve.thresholds[i]), float(curve.values[i])


def monotonicity_report(
    curve: ConditionalCurve, min_count: int, tolerance: float | None = None
) -> MonotonicityReport:
    """Classify the shape of the curve restricted to well-populated entries.

    Entries with fewer than min_count qualifying samples are dropped as
    noise. The default tolerance is twice the pooled standard error of the
    conditional means. Classification:

    * increasing: every successive value is >= previous - tolerance;
    * non_monotonic: an interior peak exceeds the final value by more than
      tolerance;
    * decreasing: everything else (peak at or near the left edge).
    """
    if min_count < 1:
        raise ValidationError(f"min_count must be >= 1, got {min_count}")
    mask = curve.defined & (curve.counts >= min_count)
    n = int(np.count_nonzero(mask))
    if n < 3:
        raise ValidationError(
            f"only {n} thresholds kept >= {min_count} samples; need at least 3"
        )
    vals = curve.values[mask]
    ths = curve.thresholds[mask]
    if tolerance is None:
        ses = curve.standard_errors[mask]
        tolerance = 2.0 * math.sqrt(float(np.mean(ses * ses)))
    elif tolerance < 0:
        raise ValidationError(f"tolerance must be >= 0, got {tolerance}")

    p = int(np.argmax(vals))
    peak_threshold = float(ths[p])
    peak_value = float(vals[p])

    if (np.diff(vals) >= -tolerance).all():
        classification = INCREASING
    elif 0 < p < n - 1 and peak_value - float(vals[-1]) > tolerance:
        classification = NON_MONOTONIC
    else:
        classification = DECREASING
    return MonotonicityReport(
        classification=classification,
        peak_threshold=peak_threshold,
        peak_value=peak_value,
        tolerance=float(tolerance),
        entries=n,
    )


# ---------------------------------------------------------------------------
# Serialization. CSV columns: threshold, value, count, defined, standard_error;
# undefined entries carry value/standard_error "nan" and defined "false". The
# JSON form uses null instead of NaN so the document stays strict JSON.
# ---------------------------------------------------------------------------


def write_curve_csv(curve: ConditionalCurve, provenance: dict, stream) -> None:
    stream.write(f"# {SCHEMA_CURVE}\n")
    prov = json.dumps(provenance, sort_keys=True, separators=(",", ":"))
    stream.write(f"# provenance: {prov}\n")
    stream.write("threshold,value,count,defined,standard_error\n")
    for i in range(len(curve)):
        defined = curve.counts[i] > 0
        stream.write(
            ",".join(
                [
                    repr(float(curve.thresholds[i])),
                    repr(float(curve.values[i])),
                    str(int(curve.counts[i])),
                    "true" if defined else "false",
                    repr(float(curve.standard_errors[i])),
                ]
            )
            + "\n"
        )


def write_curve_json(curve: ConditionalCurve, provenance: dict, stream) -> None:
    def column(arr) -> list:
        return [None if math.isnan(x) else float(x) for x in arr]

    doc = {
        "schema": SCHEMA_CURVE,
        "provenance": provenance,
        "thresholds": [float(x) for x in curve.thresholds],
        "values": column(curve.values),
        "counts": [int(x) for x in curve.counts],
        "defined": [bool(c > 0) for c in curve.counts],
        "standard_errors": column(curve.standard_errors),
    }
    json.dump(doc, stream, sort_keys=True, separators=(",", ":"))
    stream.write("\n")


def read_curve_csv(stream) -> tuple[ConditionalCurve, dict]:
    """Parse a curve CSV back into (ConditionalCurve, provenance)."""
    if stream.readline().strip() != f"# {SCHEMA_CURVE}":
        raise DataError(f"not a curve CSV (expected '# {SCHEMA_CURVE}')")
    prov_line = stream.readline().strip()
    prefix = "# provenance: "
    if not prov_line.startswith(prefix):
        raise DataError("missing provenance header line")
    provenance = json.loads(prov_line[len(prefix):])
    reader = csv.reader(stream)
    header = next(reader, None)
    if header != ["threshold", "value", "count", "defined", "standard_error"]:
        raise DataError(f"unexpected columns {header}")
    th, vals, counts, ses = [], [], [], []
    for row in reader:
        if not row:
            continue
        th.append(float(row[0]))
        vals.append(float(row[1]))
        counts.append(int(row[2]))
        ses.append(float(row[4]))
    curve = ConditionalCurve(
        thresholds=np.asarray(th), values=np.asarray(vals),
        counts=np.asarray(counts), standard_errors=np.asarray(ses),
    )
    return curve, provenance
