"""CSV ingestion of price and riskfree-rate data into analysis windows.

Pipeline: adjusted-close prices -> log-returns r_t = ln(p_t / p_{t-1}) ->
excess returns eta_t = r_t - ln(1 + y(date)) / 252 with y the annual
fractional yield in force at the date (step function, last observation
carried forward) -> fixed-length or calendar-year windows -> per-window
SampleStats pooled across instruments.

Returns are treated as one iid sequence per instrument: the step from one
observation to the next is one period regardless of calendar gaps.
"""

from __future__ import annotations

import csv
import datetime
import io
import math
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError, DegenerateVolatilityError, ValidationError
from .montecarlo import JointSampleSet
from .stats import ReturnSeries, window_stats

ROLLING_BLOCK = "rolling_block"
CALENDAR_YEAR = "calendar_year"
_POLICIES = (ROLLING_BLOCK, CALENDAR_YEAR)

PRICE_HEADER = ["date", "adjusted_close"]
RISKFREE_HEADER = ["date", "yield_percent"]


@dataclass(frozen=True)
class PriceSeries:
    """Adjusted close prices of one instrument on strictly increasing dates."""

    label: str
    dates: tuple[datetime.date, ...]
    prices: np.ndarray

    def __post_init__(self) -> None:
        prices = np.array(self.prices, dtype=np.float64, copy=True)
        dates = tuple(self.dates)
        if prices.ndim != 1 or prices.size < 1:
            raise ValidationError("prices must be a nonempty 1-d array")
        if len(dates) != prices.size:
            raise ValidationError("dates and prices must have equal length")
        if not (np.isfinite(prices).all() and (prices > 0).all()):
            raise ValidationError("prices must be finite and strictly positive")
        if any(b <= a for a, b in zip(dates, dates[1:])):
            raise ValidationError("dates must be strictly increasing")
        prices.flags.writeable = False
        object.__setattr__(self, "prices", prices)
        object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return int(self.prices.size)


@dataclass(frozen=True)
class RiskfreeCurve:
    """Annual fractional yields on strictly increasing dates, read as a step
    function: each yield applies from its date until the next one."""

    dates: tuple[datetime.date, ...]
    annual_yields: np.ndarray

    def __post_init__(self) -> None:
        yields = np.array(self.annual_yields, dtype=np.float64, copy=True)
        dates = tuple(self.dates)
        if yields.ndim != 1 or yields.size < 1:
            raise ValidationError("annual_yields must be a nonempty 1-d array")
        if len(dates) != yields.size:
            raise ValidationError("dates and annual_yields must have equal length")
        if not np.isfinite(yields).all():
            raise ValidationError("annual_yields must be finite")
        if any(b <= a for a, b in zip(dates, dates[1:])):
            raise ValidationError("dates must be strictly increasing")
        yields.flags.writeable = False
        object.__setattr__(self, "annual_yields", yields)
        object.__setattr__(self, "dates", dates)

    def rate_at(self, date: datetime.date) -> float:
        """Annual fractional yield in force at `date`."""
        i = bisect_right(self.dates, date) - 1
        if i < 0:
            raise DataError(
                f"{date.isoformat()} is before riskfree coverage "
                f"(starts {self.dates[0].isoformat()})"
            )
        return float(self.annual_yields[i])


@dataclass(frozen=True)
class DatedReturns:
    """Raw log-returns, each tagged with the date of its closing observation."""

    dates: tuple[datetime.date, ...]
    values: np.ndarray
    label: str | None = None

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        dates = tuple(self.dates)
        if values.ndim != 1:
            raise ValidationError("values must be one-dimensional")
        if len(dates) != values.size:
            raise ValidationError("dates and values must have equal length")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dates", dates)

    def __len__(self) -> int:
        return int(self.values.size)


def _rows(source, expected_header: list[str]):
    """Yield (row_number, row) pairs from a CSV path or stream.

    Row numbers are 1-based file line numbers, header included. The header
    row must match `expected_header` exactly.
    """
    if isinstance(source, (str, Path)):
        handle = open(source, "r", encoding="utf-8-sig", newline="")
        close = True
    elif isinstance(source, (io.RawIOBase, io.BufferedIOBase)):
        handle = io.TextIOWrapper(source, encoding="utf-8-sig", newline="")
        close = False
    else:
        handle = source
        close = False
    try:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError("empty file; expected a header row") from None
        if [h.strip() for h in header] != expected_header:
            raise DataError(
                f"bad header {header!r}; expected {','.join(expected_header)}"
            )
        for number, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != len(expected_header):
                raise DataError(f"row {number}: expected {len(expected_header)} fields")
            yield number, row
    finally:
        if close:
            handle.close()


def _parse_date(text: str, row_number: int) -> datetime.date:
    try:
        return datetime.date.fromisoformat(text.strip())
    except ValueError as exc:
        raise DataError(f"row {row_number}: bad date {text!r}: {exc}") from exc


def load_price_csv(source, label: str | None = None) -> PriceSeries:
    """Parse a `date,adjusted_close` CSV into a validated PriceSeries.

    `source` may be a path or an open (byte or text) stream. Rows with a
    missing or non-positive price and out-of-order dates are rejected with
    the offending row number.
    """
    if label is None and isinstance(source, (str, Path)):
        label = Path(source).stem
    dates: list[datetime.date] = []
    prices: list[float] = []
    for number, row in _rows(source, PRICE_HEADER):
        d = _parse_date(row[0], number)
        try:
            p = float(row[1])
        except ValueError as exc:
            raise DataError(f"row {number}: bad price {row[1]!r}") from exc
        if not (math.isfinite(p) and p > 0):
            raise DataError(f"row {number}: price must be positive, got {row[1]}")
        if dates:
            if d == dates[-1]:
                raise DataError(f"row {number}: duplicate date {d.isoformat()}")
            if d < dates[-1]:
                raise DataError(f"row {number}: dates not increasing at {d.isoformat()}")
        dates.append(d)
        prices.append(p)
    if not dates:
        raise DataError("no data rows")
    return PriceSeries(label=label or "prices", dates=tuple(dates), prices=np.asarray(prices))


def load_riskfree_csv(source) -> RiskfreeCurve:
    """Parse a `date,yield_percent` CSV; percent yields become fractions."""
    dates: list[datetime.date] = []
    yields: list[float] = []
    for number, row in _rows(source, RISKFREE_HEADER):
        d = _parse_date(row[0], number)
        try:
            y = float(row[1])
        except ValueError as exc:
            raise DataError(f"row {number}: bad yield {row[1]!r}") from exc
        if not math.isfinite(y):
            raise DataError(f"row {number}: yield must be finite")
        if dates and d <= dates[-1]:
            raise DataError(f"row {number}: dates not increasing at {d.isoformat()}")
        dates.append(d)
        yields.append(y / 100.0)
    if not dates:
        raise DataError("no data rows")
    return RiskfreeCurve(dates=tuple(dates), annual_yields=np.asarray(yields))


def log_returns(prices: PriceSeries) -> DatedReturns:
    """r_t = ln(p_t / p_{t-1}); each return is dated by its end observation."""
    if len(prices) < 2:
        raise ValidationError("need at least two prices to form a return")
    values = np.diff(np.log(prices.prices))
    return DatedReturns(dates=prices.dates[1:], values=values, label=prices.label)


def excess_returns(
    returns: DatedReturns,
    riskfree: RiskfreeCurve,
    periods_per_year: int = 252,
) -> ReturnSeries:
    """eta_t = r_t - ln(1 + y(date_t)) / periods_per_year.

    The ln(1 + y) form keeps eta an exact log-quantity, so window growth
    factors compose multiplicatively with the riskfree leg.
    """
    if len(returns) < 1:
        raise ValidationError("returns must be nonempty")
    rf_dates = np.array([d.toordinal() for d in riskfree.dates], dtype=np.int64)
    obs = np.array([d.toordinal() for d in returns.dates], dtype=np.int64)
    idx = np.searchsorted(rf_dates, obs, side="right") - 1
    if (idx < 0).any():
        first_bad = returns.dates[int(np.argmax(idx < 0))]
        raise DataError(
            f"{first_bad.isoformat()} is before riskfree coverage "
            f"(starts {riskfree.dates[0].isoformat()})"
        )
    daily_rf = np.log1p(riskfree.annual_yields[idx]) / periods_per_year
    return ReturnSeries(
        values=returns.values - daily_rf,
        periods_per_year=periods_per_year,
        label=returns.label,
        dates=returns.dates,
    )


def windows(
    series: ReturnSeries,
    policy: str,
    T: int = 252,
    min_length: int = 200,
) -> list[ReturnSeries]:
    """Slice a return series into analysis windows.

    rolling_block cuts consecutive non-overlapping blocks of exactly T
    observations and discards the remainder. calendar_year groups by the
    calendar year of each return date (the series must carry dates) and
    keeps years with at least min_length observations.
    """
    if policy not in _POLICIES:
        raise ValidationError(f"policy must be one of {_POLICIES}, got {policy!r}")
    if min_length < 1:
        raise ValidationError(f"min_length must be >= 1, got {min_length}")
    if min_length > T:
        raise ValidationError(f"min_length {min_length} exceeds T {T}")
    base = series.label or "series"
    out: list[ReturnSeries] = []
    if policy == ROLLING_BLOCK:
        if T < 2:
            raise ValidationError(f"T must be >= 2 for rolling blocks, got {T}")
        for i in range(len(series) // T):
            sl = slice(i * T, (i + 1) * T)
            out.append(
                ReturnSeries(
                    values=series.values[sl],
                    periods_per_year=series.periods_per_year,
                    label=f"{base}#block{i}",
                    dates=series.dates[sl] if series.dates is not None else None,
                )
            )
        return out
    if series.dates is None:
        raise ValidationError("calendar_year windowing needs a dated series")
    years = [d.year for d in series.dates]
    start = 0
    for i in range(1, len(years) + 1):
        if i == len(years) or years[i] != years[start]:
            if i - start >= min_length:
                out.append(
                    ReturnSeries(
                        values=series.values[start:i],
                        periods_per_year=series.periods_per_year,
                        label=f"{base}#{years[start]}",
                        dates=series.dates[start:i],
                    )
                )
            start = i
    return out


@dataclass(frozen=True)
class PanelResult:
    """Per-window statistics pooled across instruments.

    `samples` holds one SampleStats per usable window. `pooled` is every
    excess return from every successfully loaded instrument, with its
    population mean and standard deviation. `manifest` records per-file
    status: rows read, windows used, degenerate windows skipped, or the
    load error.
    """

    samples: JointSampleSet
    pooled: np.ndarray
    pooled_mean: float
    pooled_std: float
    manifest: tuple[dict, ...]


def panel_stats(
    price_sources,
    riskfree: RiskfreeCurve,
    policy: str = ROLLING_BLOCK,
    T: int = 252,
    min_length: int = 200,
    label: str = "panel",
) -> PanelResult:
    """Reduce a panel of price files to one JointSampleSet plus a return pool.

    Per-file failures (unreadable, malformed, too short, outside riskfree
    coverage) are collected in the manifest and do not abort the run; zero
    usable windows does. Files are processed in label-sorted order so the
    output ordering is deterministic.
    """
    sources = sorted(
        price_sources,
        key=lambda s: Path(s).stem if isinstance(s, (str, Path)) else str(s),
    )
    if not sources:
        raise ValidationError("need at least one price source")

    manifest: list[dict] = []
    pool: list[np.ndarray] = []
    m_col: list[float] = []
    s_col: list[float] = []
    sh_col: list[float] = []
    g_col: list[float] = []
    t_col: list[int] = []

    for source in sources:
        name = str(source)
        try:
            prices = load_price_csv(source)
            eta = excess_returns(log_returns(prices), riskfree)
        except (DataError, ValidationError, OSError) as exc:
            manifest.append({"file": name, "status": "error", "error": str(exc)})
            continue
        pool.append(eta.values)
        used = 0
        skipped = 0
        for window in windows(eta, policy, T=T, min_length=min_length):
            try:
                st = window_stats(window)
            except DegenerateVolatilityError:
                skipped += 1
                continue
            m_col.append(st.m)
            s_col.append(st.s)
            sh_col.append(st.sharpe)
            g_col.append(st.growth)
            t_col.append(st.T)
            used += 1
        manifest.append(
            {
                "file": name,
                "label": prices.label,
                "status": "ok",
                "rows": len(prices),
                "returns": len(eta),
                "windows": used,
                "skipped_windows": skipped,
            }
        )

    if not m_col:
        raise DataError("zero usable windows across the panel")

    t = np.asarray(t_col, dtype=np.int64)
    uniform = int(t[0]) if bool((t == t[0]).all()) else None
    provenance = {
        "kind": "dataset",
        "label": label,
        "policy": policy,
        "T": uniform,
        "min_length": int(min_length),
        "instruments": sum(1 for e in manifest if e["status"] == "ok"),
        "files": len(manifest),
    }
    samples = JointSampleSet(
        m=np.asarray(m_col), s=np.asarray(s_col), sharpe=np.asarray(sh_col),
        growth=np.asarray(g_col), t=t, provenance=provenance,
    )
    pooled = np.concatenate(pool) if pool else np.empty(0)
    pooled_mean = float(pooled.mean()) if pooled.size else math.nan
    pooled_std = float(pooled.std()) if pooled.size else math.nan
    return PanelResult(
        samples=samples, pooled=pooled, pooled_mean=pooled_mean,
        pooled_std=pooled_std, manifest=tuple(manifest),
    )
