"""Monte Carlo generation of joint (m, s, S) samples and summary analytics.

simulate_joint draws N independent windows of T returns and reduces each to
its SampleStats. Every window w uses its own RNG substream derived purely
from (seed, w), so the output is bit-identical for a given seed no matter
how many workers execute it or in which order windows complete.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .distributions import DistributionSpec, sample_returns
from .errors import DataError, DegenerateVolatilityError, ValidationError
from .randomness import RandomStream
from .stats import SampleStats, window_stats

SCHEMA_SAMPLES = "sharpedist.samples/1"


@dataclass
class JointSampleSet:
    """N joint observations of per-window statistics.

    Columns are stored as parallel read-only arrays. `t` holds the window
    length of each sample; simulated sets share one T, ingested panels may
    not. `provenance` records how the set was produced (kind "simulation":
    family, mu, sigma, nu, T, N, seed; kind "dataset": label, policy, ...).
    """

    m: np.ndarray
    s: np.ndarray
    sharpe: np.ndarray
    growth: np.ndarray
    t: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        floats = {}
        for name in ("m", "s", "sharpe", "growth"):
            arr = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if arr.ndim != 1:
                raise ValidationError(f"{name} must be one-dimensional")
            if not np.isfinite(arr).all():
                raise ValidationError(f"{name} must hold only finite values")
            floats[name] = arr
        t = np.array(self.t, dtype=np.int64, copy=True)
        if t.ndim != 1:
            raise ValidationError("t must be one-dimensional")
        n = floats["m"].size
        for name, arr in floats.items():
            if arr.size != n:
                raise ValidationError("all columns must have equal length")
        if t.size != n:
            raise ValidationError("all columns must have equal length")
        if n and (t < 1).any():
            raise ValidationError("window lengths must be >= 1")
        for name, arr in floats.items():
            arr.flags.writeable = False
            setattr(self, name, arr)
        t.flags.writeable = False
        self.t = t

    @property
    def N(self) -> int:
        return int(self.m.size)

    def __len__(self) -> int:
        return self.N

    @property
    def uniform_t(self) -> int | None:
        """The shared window length, or None when windows differ in length."""
        if self.N == 0:
            return None
        first = int(self.t[0])
        return first if bool((self.t == first).all()) else None

    @cached_property
    def samples(self) -> list[SampleStats]:
        return [
            SampleStats(
                m=float(self.m[i]),
                s=float(self.s[i]),
                T=int(self.t[i]),
                sharpe=float(self.sharpe[i]),
                growth=float(self.growth[i]),
            )
            for i in range(self.N)
        ]


@dataclass(frozen=True)
class Histogram:
    """Counts over equal-width bins. Bins are left-closed, right-open; the
    last bin is closed on both sides."""

    edges: np.ndarray
    counts: np.ndarray
    total: int

    def __post_init__(self) -> None:
        edges = np.array(self.edges, dtype=np.float64, copy=True)
        counts = np.array(self.counts, dtype=np.int64, copy=True)
        if edges.ndim != 1 or edges.size < 2:
            raise ValidationError("edges must hold at least two boundaries")
        if (np.diff(edges) <= 0).any():
            raise ValidationError("edges must be strictly increasing")
        if counts.ndim != 1 or counts.size != edges.size - 1:
            raise ValidationError("counts must have one entry per bin")
        if (counts < 0).any():
            raise ValidationError("counts must be non-negative")
        if int(counts.sum()) != self.total:
            raise ValidationError("counts must sum to total")
        edges.flags.writeable = False
        counts.flags.writeable = False
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "counts", counts)

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def density(self) -> np.ndarray:
        """Counts normalized to an empirical probability density."""
        return self.counts / (self.total * self.widths)


def simulate_joint(
    spec: DistributionSpec,
    T: int,
    N: int,
    seed: int,
    workers: int = 1,
) -> JointSampleSet:
    """Generate N independent T-period windows and reduce each to (m, s, S, R).

    Window w draws from RandomStream(seed).substream(w), a pure function of
    the seed and the window index, so results do not depend on `workers`.
    Worker threads fill disjoint slices of preallocated output arrays.
    """
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if T < 2:
        raise ValidationError(f"T must be >= 2, got {T}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")
    root = RandomStream(seed)

    m = np.empty(N)
    s = np.empty(N)
    sh = np.empty(N)
    g = np.empty(N)

    def run_chunk(indices: np.ndarray) -> None:
        for w in indices:
            series = sample_returns(spec, T, root.substream(int(w)))
            try:
                st = window_stats(series)
            except DegenerateVolatilityError as exc:
                # Cannot happen for continuous families; if it does, the
                # stream is broken and the whole run must abort loudly.
                raise RuntimeError(
                    f"window {int(w)} produced zero volatility: {exc}"
                ) from exc
            m[w] = st.m
            s[w] = st.s
            sh[w] = st.sharpe
            g[w] = st.growth

    all_indices = np.arange(N)
    if workers == 1:
        run_chunk(all_indices)
    else:
        chunks = [c for c in np.array_split(all_indices, workers) if c.size]
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            for future in [pool.submit(run_chunk, c) for c in chunks]:
                future.result()

    provenance = {
        "kind": "simulation",
        "family": spec.family,
        "mu": spec.mu,
        "sigma": spec.sigma,
        "nu": spec.nu,
        "T": int(T),
        "N": int(N),
        "seed": int(seed),
    }
    return JointSampleSet(
        m=m, s=s, sharpe=sh, growth=g, t=np.full(N, T, dtype=np.int64),
        provenance=provenance,
    )


def exceedance_fraction(sample_set: JointSampleSet, threshold: float) -> float:
    """Fraction of samples with Sharpe ratio >= threshold (closed bound)."""
    if sample_set.N == 0:
        raise ValidationError("sample set is empty")
    return float(np.count_nonzero(sample_set.sharpe >= threshold)) / sample_set.N


def pearson_correlation(xs, ys) -> float:
    """Standard Pearson coefficient between two equal-length value lists."""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise ValidationError("inputs must be one-dimensional and equal length")
    if x.size < 2:
        raise ValidationError("need at least two observations")
    dx = x - x.mean()
    dy = y - y.mean()
    vx = float(np.dot(dx, dx))
    vy = float(np.dot(dy, dy))
    if vx == 0.0 or vy == 0.0:
        raise ValidationError("zero variance input; correlation undefined")
    r = float(np.dot(dx, dy)) / math.sqrt(vx * vy)
    return min(1.0, max(-1.0, r))


def histogram(values, bins: int, range: tuple[float, float] | None = None) -> Histogram:
    """Equal-width histogram.

    With an explicit range, out-of-range values are clipped into the end
    bins so the total always equals len(values). Without one, the range is
    the data min/max (padded by 0.5 each side when all values coincide).
    """
    v = np.asarray(values, dtype=np.float64).ravel()
    if v.size == 0:
        raise ValidationError("values must be nonempty")
    if not np.isfinite(v).all():
        raise ValidationError("values must all be finite")
    if bins < 1:
        raise ValidationError(f"bins must be >= 1, got {bins}")
    if range is None:
        lo, hi = float(v.min()), float(v.max())
        if lo == hi:
            lo -= 0.5
            hi += 0.5
    else:
        lo, hi = float(range[0]), float(range[1])
        if not (lo < hi):
            raise ValidationError(f"range must be increasing, got ({lo}, {hi})")
    edges = np.linspace(lo, hi, bins + 1)
    idx = np.clip(np.searchsorted(edges, v, side="right") - 1, 0, bins - 1)
    counts = np.bincount(idx, minlength=bins)
    return Histogram(edges=edges, counts=counts, total=int(v.size))


def tail_association(sample_set: JointSampleSet, quantile: float) -> float:
    """Median of s / (sqrt(T) * |m|) over the top-quantile |m| samples.

    Near 1 when volatility tracks the extreme mean returns (heavy tails,
    where a single outlier return drives both m and s); far from 1 when
    s stays anchored at sigma while m fluctuates (Gaussian case).
    """
    if sample_set.N == 0:
        raise ValidationError("sample set is empty")
    if not (0.0 < quantile <= 0.5):
        raise ValidationError(f"quantile must be in (0, 0.5], got {quantile}")
    am = np.abs(sample_set.m)
    k = max(1, int(math.ceil(quantile * sample_set.N)))
    if k >= sample_set.N:
        top = np.arange(sample_set.N)
    else:
        top = np.argpartition(-am, k - 1)[:k]
    ratios = sample_set.s[top] / (np.sqrt(sample_set.t[top]) * am[top])
    return float(np.median(ratios))


# ---------------------------------------------------------------------------
# Serialization. CSV columns: index, m, s, sharpe, growth, with a trailing t
# column only when window lengths vary. JSON carries the same columns plus a
# schema tag and the provenance block. Floats are written with repr, the
# shortest digit string that round-trips to the same float64.
# ---------------------------------------------------------------------------


def _provenance_line(provenance: dict) -> str:
    return json.dumps(provenance, sort_keys=True, separators=(",", ":"))


def write_samples_csv(sample_set: JointSampleSet, stream: io.TextIOBase) -> None:
    """Write a sample set as CSV with a commented provenance header."""
    varying_t = sample_set.uniform_t is None and sample_set.N > 0
    stream.write(f"# {SCHEMA_SAMPLES}\n")
    stream.write(f"# provenance: {_provenance_line(sample_set.provenance)}\n")
    columns = ["index", "m", "s", "sharpe", "growth"]
    if varying_t:
        columns.append("t")
    stream.write(",".join(columns) + "\n")
    for i in range(sample_set.N):
        row = [
            str(i),
            repr(float(sample_set.m[i])),
            repr(float(sample_set.s[i])),
            repr(float(sample_set.sharpe[i])),
            repr(float(sample_set.growth[i])),
        ]
        if varying_t:
            row.append(str(int(sample_set.t[i])))
        stream.write(",".join(row) + "\n")


def write_samples_json(sample_set: JointSampleSet, stream: io.TextIOBase) -> None:
    """Write a sample set as schema-tagged JSON."""
    varying_t = sample_set.uniform_t is None and sample_set.N > 0
    data = {
        "m": [float(x) for x in sample_set.m],
        "s": [float(x) for x in sample_set.s],
        "sharpe": [float(x) for x in sample_set.sharpe],
        "growth": [float(x) for x in sample_set.growth],
    }
    if varying_t:
        data["t"] = [int(x) for x in sample_set.t]
    doc = {
        "schema": SCHEMA_SAMPLES,
        "provenance": sample_set.provenance,
        "n": sample_set.N,
        "columns": list(data.keys()),
        "data": data,
    }
    json.dump(doc, stream, sort_keys=True, separators=(",", ":"))
    stream.write("\n")


def _uniform_t_from_provenance(provenance: dict, n: int) -> np.ndarray:
    T = provenance.get("T")
    if not isinstance(T, int) or T < 1:
        raise DataError(
            "sample file has no per-row t column and no usable T in provenance"
        )
    return np.full(n, T, dtype=np.int64)


def read_samples_csv(stream: io.TextIOBase) -> JointSampleSet:
    """Parse a sample-set CSV written by write_samples_csv."""
    first = stream.readline()
    if first.strip() != f"# {SCHEMA_SAMPLES}":
        raise DataError(f"not a sample-set CSV (expected '# {SCHEMA_SAMPLES}')")
    prov_line = stream.readline().strip()
    prefix = "# provenance: "
    if not prov_line.startswith(prefix):
        raise DataError("missing provenance header line")
    try:
        provenance = json.loads(prov_line[len(prefix):])
    except json.JSONDecodeError as exc:
        raise DataError(f"bad provenance JSON: {exc}") from exc
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise DataError("missing column header row") from None
    base = ["index", "m", "s", "sharpe", "growth"]
    if header != base and header != base + ["t"]:
        raise DataError(f"unexpected columns {header}")
    has_t = header[-1] == "t"
    cols: list[list[float]] = [[], [], [], []]
    ts: list[int] = []
    for row_num, row in enumerate(reader):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"row {row_num}: expected {len(header)} fields")
        try:
            for j in range(4):
                cols[j].append(float(row[1 + j]))
            if has_t:
                ts.append(int(row[5]))
        except ValueError as exc:
            raise DataError(f"row {row_num}: {exc}") from exc
    n = len(cols[0])
    t = np.asarray(ts, dtype=np.int64) if has_t else _uniform_t_from_provenance(provenance, n)
    return JointSampleSet(
        m=np.asarray(cols[0]), s=np.asarray(cols[1]),
        sharpe=np.asarray(cols[2]), growth=np.asarray(cols[3]),
        t=t, provenance=provenance,
    )


def read_samples_json(stream: io.TextIOBase) -> JointSampleSet:
    """Parse a sample-set JSON document written by write_samples_json."""
    try:
        doc = json.load(stream)
    except json.JSONDecodeError as exc:
        raise DataError(f"bad JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA_SAMPLES:
        raise DataError(f"not a sample-set document (schema {SCHEMA_SAMPLES})")
    provenance = doc.get("provenance", {})
    data = doc.get("data")
    if not isinstance(data, dict):
        raise DataError("missing data block")
    try:
        m = np.asarray(data["m"], dtype=np.float64)
        s = np.asarray(data["s"], dtype=np.float64)
        sh = np.asarray(data["sharpe"], dtype=np.float64)
        g = np.asarray(data["growth"], dtype=np.float64)
    except KeyError as exc:
        raise DataError(f"missing column {exc}") from exc
    if "t" in data:
        t = np.asarray(data["t"], dtype=np.int64)
    else:
        t = _uniform_t_from_provenance(provenance, m.size)
    if doc.get("n") != int(m.size):
        raise DataError("declared n does not match column length")
    return JointSampleSet(m=m, s=s, sharpe=sh, growth=g, t=t, provenance=provenance)
