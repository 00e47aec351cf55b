"""Command-line interface.

Subcommands:

* simulate: joint (m, s, S) samples from a return model, Sharpe histogram,
  and the asymptotic density table.
* joint: dependence diagnostics between m, s and S (correlations, tail
  association) on simulated or ingested samples.
* conditional: the conditional mean Sharpe curve and its shape report.
* ingest: price/riskfree CSVs to per-window samples, pooled return
  histogram and fitted density tables, plus a load manifest.
* grade: fraction of samples at or above Sharpe thresholds.

Parameter precedence: command-line flags, then a JSON config file given
with --config, then built-in defaults. Every output is written to a
temporary file and renamed into place, and carries a provenance header
(command, parameters, seed, package version). Numeric text output uses
repr, the shortest round-trip form of a float64.

Exit codes: 0 ok, 2 usage error, 3 input-data error, 4 internal failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .conditional import (
    conditional_sharpe,
    default_threshold_grid,
    monotonicity_report,
    write_curve_csv,
    write_curve_json,
)
from .distributions import GAUSSIAN, STUDENT, DistributionSpec, density
from .errors import DataError, ValidationError
from .ingestion import (
    CALENDAR_YEAR,
    ROLLING_BLOCK,
    load_riskfree_csv,
    panel_stats,
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
from .stats import lo_asymptotic_density

SCHEMA_HISTOGRAM = "sharpedist.histogram/1"
SCHEMA_DENSITY = "sharpedist.density/1"
SCHEMA_FITS = "sharpedist.fits/1"
SCHEMA_GRADES = "sharpedist.grades/1"
SCHEMA_JOINT = "sharpedist.joint/1"
SCHEMA_REPORT = "sharpedist.report/1"
SCHEMA_MANIFEST = "sharpedist.manifest/1"

OUTPUT_DIR_ENV = "SHARPEDIST_OUT"

DEFAULTS: dict = {
    "family": STUDENT,
    "mu": 1.45e-4,
    "sigma": 1.73e-2,
    "nu": 3.0,
    "T": 252,
    "N": 100000,
    "seed": 42,
    "workers": 1,
    "format": "csv",
    "figures": True,
    "out": None,
    "bins": 100,
    "range": (-4.0, 4.0),
    "density_points": 801,
    "quantile": 1e-3,
    "points": 101,
    "grid_quantile": 0.9999,
    "min_count": 50,
    "tolerance": None,
    "thresholds": (1.0, 2.0, 3.0),
    "policy": ROLLING_BLOCK,
    "min_length": 200,
    "label": "panel",
    "input": None,
    "prices": None,
    "riskfree": None,
}

PER_COMMAND_DEFAULTS: dict[str, dict] = {
    "ingest": {"bins": 200},
}


@dataclass(frozen=True)
class RunConfig:
    """Merged parameters of one CLI run.

    `explicit` holds the names the user actually set (flag or config file),
    so runners can tell a deliberate value from a built-in default.
    """

    command: str
    values: dict
    explicit: frozenset[str]

    def __getattr__(self, name: str):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    def was_set(self, name: str) -> bool:
        return name in self.explicit


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sharpedist",
        description=(
            "Joint sampling distribution of mean return, volatility and "
            "Sharpe ratio under Gaussian and heavy-tailed return models."
        ),
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    io_parent = argparse.ArgumentParser(add_help=False)
    io_parent.add_argument("--out", help=f"output directory (default: ${OUTPUT_DIR_ENV} or .)")
    io_parent.add_argument("--format", choices=["csv", "json"],
                           help="sample-set and curve file format (default csv)")
    io_parent.add_argument("--config", help="JSON file with defaults for any flag")
    io_parent.add_argument("--figures", action=argparse.BooleanOptionalAction,
                           default=None, help="render PNG figures next to the data (default on)")

    model_parent = argparse.ArgumentParser(add_help=False)
    model_parent.add_argument("--family", choices=[GAUSSIAN, STUDENT],
                              help="return model family (default student)")
    model_parent.add_argument("--mu", type=float, help="per-period mean excess return (default 1.45e-4)")
    model_parent.add_argument("--sigma", type=float, help="per-period volatility (default 1.73e-2)")
    model_parent.add_argument("--nu", type=float, help="student tail index, > 2 (default 3)")
    model_parent.add_argument("--T", type=int, help="periods per window (default 252)")
    model_parent.add_argument("--N", type=int, help="number of windows (default 100000)")
    model_parent.add_argument("--seed", type=int, help="root RNG seed (default 42)")
    model_parent.add_argument("--workers", type=int,
                              help="worker threads; never changes the output bytes (default 1)")

    p = sub.add_parser("simulate", parents=[model_parent, io_parent],
                       help="sample-set file, Sharpe histogram and asymptotic density table")
    p.add_argument("--bins", type=int, help="Sharpe histogram bins (default 100)")
    p.add_argument("--range", type=float, nargs=2, metavar=("LO", "HI"),
                   help="Sharpe histogram range (default -4 4)")

    p = sub.add_parser("joint", parents=[model_parent, io_parent],
                       help="dependence diagnostics for (m, s, S)")
    p.add_argument("--input", help="existing sample-set file instead of simulating")
    p.add_argument("--quantile", type=float,
                   help="top-|m| quantile for tail association (default 1e-3)")

    p = sub.add_parser("conditional", parents=[model_parent, io_parent],
                       help="conditional mean Sharpe curve and shape report")
    p.add_argument("--input", help="existing sample-set file instead of simulating")
    p.add_argument("--points", type=int, help="threshold grid size (default 101)")
    p.add_argument("--grid-quantile", dest="grid_quantile", type=float,
                   help="upper m quantile capping the grid (default 0.9999)")
    p.add_argument("--min-count", dest="min_count", type=int,
                   help="minimum samples per threshold in the shape report (default 50)")
    p.add_argument("--tolerance", type=float,
                   help="slack for the shape classification (default: 2x pooled standard error)")

    p = sub.add_parser("ingest", parents=[io_parent],
                       help="price/riskfree CSVs to per-window samples and pooled-return fits")
    p.add_argument("--prices", nargs="+",
                   help="price CSV files or directories of them (header date,adjusted_close)")
    p.add_argument("--riskfree", help="riskfree CSV (header date,yield_percent)")
    p.add_argument("--policy", choices=[ROLLING_BLOCK, CALENDAR_YEAR],
                   help="windowing policy (default rolling_block)")
    p.add_argument("--T", type=int, help="window length for rolling blocks (default 252)")
    p.add_argument("--min-length", dest="min_length", type=int,
                   help="minimum observations per calendar-year window (default min(200, T))")
    p.add_argument("--label", help="dataset label recorded in provenance (default panel)")
    p.add_argument("--bins", type=int, help="pooled-return histogram bins (default 200)")
    p.add_argument("--nu", type=float, help="tail index of the fitted student overlay (default 3)")

    p = sub.add_parser("grade", parents=[model_parent, io_parent],
                       help="fractions of samples at or above Sharpe thresholds")
    p.add_argument("--input", help="existing sample-set file instead of simulating")
    p.add_argument("--thresholds", type=float, nargs="+",
                   help="Sharpe thresholds (default 1 2 3)")

    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = json.load(f)
    except OSError as exc:
        raise ValidationError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValidationError("config file must hold a JSON object")
    unknown = sorted(set(doc) - set(DEFAULTS))
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
    return {k: v for k, v in doc.items() if v is not None}


def merge_config(args: argparse.Namespace) -> RunConfig:
    """Apply precedence: flags over config file over built-in defaults."""
    merged = dict(DEFAULTS)
    merged.update(PER_COMMAND_DEFAULTS.get(args.command, {}))
    explicit: set[str] = set()
    config_path = getattr(args, "config", None)
    if config_path:
        from_file = _load_config_file(config_path)
        merged.update(from_file)
        explicit.update(from_file)
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        if key in merged:
            merged[key] = value
            explicit.add(key)
    if merged.get("range") is not None:
        merged["range"] = tuple(float(x) for x in merged["range"])
    if merged.get("thresholds") is not None:
        merged["thresholds"] = tuple(float(x) for x in merged["thresholds"])
    return RunConfig(command=args.command, values=merged, explicit=frozenset(explicit))


def _build_spec(cfg: RunConfig) -> DistributionSpec:
    family = cfg.family
    if family == GAUSSIAN:
        if cfg.was_set("nu"):
            raise ValidationError("--nu is only meaningful with --family student")
        return DistributionSpec(GAUSSIAN, cfg.mu, cfg.sigma)
    return DistributionSpec(STUDENT, cfg.mu, cfg.sigma, nu=cfg.nu)


def _out_dir(cfg: RunConfig) -> Path:
    out = cfg.out if cfg.out is not None else os.environ.get(OUTPUT_DIR_ENV, ".")
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _atomic_write_text(path: Path, render) -> None:
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as f:
            render(f)
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise


def _sanitize(value):
    """Make a JSON-safe copy: non-finite floats become null."""
    if isinstance(value, dict):
        return {k: _sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v) for v in value]
    if isinstance(value, (np.floating, float)):
        v = float(value)
        return v if math.isfinite(v) else None
    if isinstance(value, np.integer):
        return int(value)
    return value


def _write_json_doc(path: Path, doc: dict) -> None:
    _atomic_write_text(
        path,
        lambda f: (json.dump(_sanitize(doc), f, sort_keys=True, indent=2), f.write("\n")),
    )


def _provenance(cfg: RunConfig, params: dict, source: dict | None = None) -> dict:
    doc = {"command": cfg.command, "version": __version__, "config": params}
    if source is not None:
        doc["source"] = source
    return doc


def _provenance_comment(provenance: dict) -> str:
    return "# provenance: " + json.dumps(provenance, sort_keys=True, separators=(",", ":"))


def _write_samples_file(sample_set: JointSampleSet, path: Path, fmt: str) -> None:
    writer = write_samples_csv if fmt == "csv" else write_samples_json
    _atomic_write_text(path, lambda f: writer(sample_set, f))


def _write_histogram_csv(hist: Histogram, provenance: dict, path: Path) -> None:
    def render(f):
        f.write(f"# {SCHEMA_HISTOGRAM}\n")
        f.write(_provenance_comment(provenance) + "\n")
        f.write("left,right,count,density\n")
        dens = hist.density
        for i in range(hist.counts.size):
            f.write(
                f"{float(hist.edges[i])!r},{float(hist.edges[i + 1])!r},"
                f"{int(hist.counts[i])},{float(dens[i])!r}\n"
            )

    _atomic_write_text(path, render)


def _write_table_csv(path: Path, schema: str, provenance: dict,
                     columns: list[str], rows) -> None:
    def render(f):
        f.write(f"# {schema}\n")
        f.write(_provenance_comment(provenance) + "\n")
        f.write(",".join(columns) + "\n")
        for row in rows:
            f.write(",".join(repr(float(v)) for v in row) + "\n")

    _atomic_write_text(path, render)


def _load_input_set(path: str) -> JointSampleSet:
    p = Path(path)
    if not p.exists():
        raise DataError(f"input sample file not found: {p}")
    reader = read_samples_json if p.suffix.lower() == ".json" else read_samples_csv
    with open(p, "r", encoding="utf-8", newline="") as f:
        return reader(f)


def _obtain_samples(cfg: RunConfig) -> tuple[JointSampleSet, bool]:
    """Existing sample file when --input is given, otherwise a fresh run.

    Returns (sample_set, simulated).
    """
    if cfg.input:
        return _load_input_set(cfg.input), False
    spec = _build_spec(cfg)
    return simulate_joint(spec, cfg.T, cfg.N, cfg.seed, workers=cfg.workers), True


def _model_params(cfg: RunConfig) -> dict:
    nu = cfg.nu if cfg.family == STUDENT else None
    return {
        "family": cfg.family, "mu": cfg.mu, "sigma": cfg.sigma, "nu": nu,
        "T": cfg.T, "N": cfg.N, "seed": cfg.seed,
    }


def _cmd_simulate(cfg: RunConfig) -> int:
    spec = _build_spec(cfg)
    lo, hi = cfg.range
    if not lo < hi:
        raise ValidationError(f"range must be increasing, got ({lo}, {hi})")
    if cfg.bins < 1:
        raise ValidationError(f"bins must be >= 1, got {cfg.bins}")

    started = time.perf_counter()
    sample_set = simulate_joint(spec, cfg.T, cfg.N, cfg.seed, workers=cfg.workers)
    elapsed = time.perf_counter() - started

    hist = histogram(sample_set.sharpe, cfg.bins, (lo, hi))
    x = np.linspace(lo, hi, cfg.density_points)
    y = np.asarray(lo_asymptotic_density(spec, cfg.T, x))

    params = {**_model_params(cfg), "bins": cfg.bins, "range": [lo, hi]}
    prov = _provenance(cfg, params)
    out = _out_dir(cfg)

    sample_path = out / f"samples.{cfg.format}"
    _write_samples_file(sample_set, sample_path, cfg.format)
    _write_histogram_csv(hist, prov, out / "sharpe_histogram.csv")
    _write_table_csv(out / "lo_density.csv", SCHEMA_DENSITY, prov,
                     ["x", "density"], zip(x, y))
    written = [sample_path, out / "sharpe_histogram.csv", out / "lo_density.csv"]
    if cfg.figures:
        from . import figures
        figures.save_sharpe_distribution(hist, x, y, out / "sharpe_distribution.png")
        written.append(out / "sharpe_distribution.png")

    mean_s = float(np.mean(sample_set.sharpe))
    std_s = float(np.std(sample_set.sharpe))
    print(f"simulated N={cfg.N} windows of T={cfg.T} ({spec.family}) in {elapsed:.2f}s")
    print(f"mean S = {mean_s:.6f}   std S = {std_s:.6f}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_joint(cfg: RunConfig) -> int:
    sample_set, simulated = _obtain_samples(cfg)
    corr_ms = pearson_correlation(sample_set.m, sample_set.s)
    corr_abs = pearson_correlation(np.abs(sample_set.m), sample_set.s)
    ratio = tail_association(sample_set, cfg.quantile)

    params = {"quantile": cfg.quantile}
    if simulated:
        params.update(_model_params(cfg))
    prov = _provenance(cfg, params, source=sample_set.provenance)
    out = _out_dir(cfg)
    written = []
    if simulated:
        sample_path = out / f"samples.{cfg.format}"
        _write_samples_file(sample_set, sample_path, cfg.format)
        written.append(sample_path)
    summary = {
        "schema": SCHEMA_JOINT,
        "provenance": prov,
        "n": sample_set.N,
        "correlation_m_s": corr_ms,
        "correlation_abs_m_s": corr_abs,
        "tail_association": {"quantile": cfg.quantile, "median_ratio": ratio},
    }
    _write_json_doc(out / "joint_summary.json", summary)
    written.append(out / "joint_summary.json")
    if cfg.figures:
        from . import figures
        figures.save_joint_scatter(sample_set.m, sample_set.s, sample_set.sharpe,
                                   out / "joint_scatter.png")
        written.append(out / "joint_scatter.png")

    print(f"corr(m, s) = {corr_ms:.6f}")
    print(f"corr(|m|, s) = {corr_abs:.6f}")
    print(f"tail association (top {cfg.quantile:g} of |m|): median s/(sqrt(T)|m|) = {ratio:.6f}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_conditional(cfg: RunConfig) -> int:
    sample_set, simulated = _obtain_samples(cfg)
    grid = default_threshold_grid(sample_set, cfg.points, cfg.grid_quantile)
    curve = conditional_sharpe(sample_set, grid)
    report = monotonicity_report(curve, cfg.min_count, cfg.tolerance)

    # descriptive extremes only: where does the best Sharpe sit in m, and
    # the best m in Sharpe (fractional ranks in [0, 1])
    i_max_sharpe = int(np.argmax(sample_set.sharpe))
    i_max_m = int(np.argmax(sample_set.m))
    n = sample_set.N
    descriptive = {
        "max_sharpe_m_rank": float(np.count_nonzero(sample_set.m <= sample_set.m[i_max_sharpe])) / n,
        "max_m_sharpe_rank": float(np.count_nonzero(sample_set.sharpe <= sample_set.sharpe[i_max_m])) / n,
    }

    params = {
        "points": cfg.points, "grid_quantile": cfg.grid_quantile,
        "min_count": cfg.min_count, "tolerance": cfg.tolerance,
    }
    if simulated:
        params.update(_model_params(cfg))
    prov = _provenance(cfg, params, source=sample_set.provenance)
    out = _out_dir(cfg)
    written = []
    if simulated:
        sample_path = out / f"samples.{cfg.format}"
        _write_samples_file(sample_set, sample_path, cfg.format)
        written.append(sample_path)

    curve_path = out / f"conditional_curve.{cfg.format}"
    curve_writer = write_curve_csv if cfg.format == "csv" else write_curve_json
    _atomic_write_text(curve_path, lambda f: curve_writer(curve, prov, f))
    written.append(curve_path)

    report_doc = {
        "schema": SCHEMA_REPORT,
        "provenance": prov,
        "classification": report.classification,
        "peak_threshold": report.peak_threshold,
        "peak_value": report.peak_value,
        "tolerance": report.tolerance,
        "entries": report.entries,
        "min_count": cfg.min_count,
        "descriptive": descriptive,
    }
    _write_json_doc(out / "conditional_report.json", report_doc)
    written.append(out / "conditional_report.json")
    if cfg.figures:
        from . import figures
        figures.save_conditional_curve(curve, report, out / "conditional_curve.png")
        written.append(out / "conditional_curve.png")

    print(f"classification: {report.classification} "
          f"(peak {report.peak_value:.4f} at m = {report.peak_threshold:.6g}, "
          f"tolerance {report.tolerance:.4f}, {report.entries} thresholds)")
    for path in written:
        print(f"wrote {path}")
    return 0


def _resolve_price_sources(entries) -> list[Path]:
    paths: list[Path] = []
    for entry in entries:
        p = Path(entry)
        if p.is_dir():
            found = sorted(p.glob("*.csv"))
            if not found:
                raise DataError(f"no *.csv files in directory {p}")
            paths.extend(found)
        elif p.exists():
            paths.append(p)
        else:
            raise DataError(f"price source not found: {p}")
    return paths


def _cmd_ingest(cfg: RunConfig) -> int:
    if not cfg.prices:
        raise ValidationError("ingest requires --prices")
    if not cfg.riskfree:
        raise ValidationError("ingest requires --riskfree")
    if cfg.was_set("min_length"):
        min_length = cfg.min_length
    else:
        min_length = min(cfg.min_length, cfg.T)

    price_paths = _resolve_price_sources(cfg.prices)
    rf_path = Path(cfg.riskfree)
    if not rf_path.exists():
        raise DataError(f"riskfree file not found: {rf_path}")
    riskfree = load_riskfree_csv(rf_path)

    panel = panel_stats(price_paths, riskfree, policy=cfg.policy, T=cfg.T,
                        min_length=min_length, label=cfg.label)
    sample_set = panel.samples

    hist = histogram(panel.pooled, cfg.bins)
    x = np.linspace(float(hist.edges[0]), float(hist.edges[-1]), cfg.density_points)
    gaussian_fit = DistributionSpec(GAUSSIAN, panel.pooled_mean, panel.pooled_std)
    student_fit = DistributionSpec(STUDENT, panel.pooled_mean, panel.pooled_std, nu=cfg.nu)
    gaussian_y = np.asarray(density(gaussian_fit, x))
    student_y = np.asarray(density(student_fit, x))

    params = {
        "policy": cfg.policy, "T": cfg.T, "min_length": min_length,
        "label": cfg.label, "bins": cfg.bins, "nu": cfg.nu,
        "files": [str(p) for p in price_paths], "riskfree": str(rf_path),
    }
    prov = _provenance(cfg, params, source=sample_set.provenance)
    out = _out_dir(cfg)

    sample_path = out / f"samples.{cfg.format}"
    _write_samples_file(sample_set, sample_path, cfg.format)
    _write_histogram_csv(hist, prov, out / "pooled_histogram.csv")
    _write_table_csv(out / "density_fits.csv", SCHEMA_FITS, prov,
                     ["x", "gaussian_density", "student_density"],
                     zip(x, gaussian_y, student_y))
    manifest_doc = {
        "schema": SCHEMA_MANIFEST,
        "provenance": prov,
        "files": list(panel.manifest),
        "windows": sample_set.N,
        "pooled": {
            "count": int(panel.pooled.size),
            "mean": panel.pooled_mean,
            "std": panel.pooled_std,
        },
    }
    _write_json_doc(out / "manifest.json", manifest_doc)
    written = [sample_path, out / "pooled_histogram.csv",
               out / "density_fits.csv", out / "manifest.json"]
    if cfg.figures:
        from . import figures
        figures.save_return_density(hist, x, gaussian_y, student_y,
                                    out / "return_density.png")
        written.append(out / "return_density.png")

    failures = sum(1 for e in panel.manifest if e["status"] != "ok")
    print(f"ingested {len(price_paths)} files ({failures} failed), "
          f"{sample_set.N} windows")
    print(f"pooled returns: count = {panel.pooled.size}, "
          f"mean = {panel.pooled_mean:.6e}, std = {panel.pooled_std:.6e}")
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_grade(cfg: RunConfig) -> int:
    sample_set, simulated = _obtain_samples(cfg)
    thresholds = cfg.thresholds
    if not thresholds:
        raise ValidationError("need at least one threshold")
    fractions = [exceedance_fraction(sample_set, th) for th in thresholds]

    params = {"thresholds": list(thresholds)}
    if simulated:
        params.update(_model_params(cfg))
    prov = _provenance(cfg, params, source=sample_set.provenance)
    out = _out_dir(cfg)
    written = []
    if simulated:
        sample_path = out / f"samples.{cfg.format}"
        _write_samples_file(sample_set, sample_path, cfg.format)
        written.append(sample_path)
    _write_table_csv(out / "grades.csv", SCHEMA_GRADES, prov,
                     ["threshold", "fraction"], zip(thresholds, fractions))
    written.append(out / "grades.csv")

    for th, fr in zip(thresholds, fractions):
        print(f"fraction(S >= {th:g}) = {fr:.6f}")
    for path in written:
        print(f"wrote {path}")
    return 0


_RUNNERS = {
    "simulate": _cmd_simulate,
    "joint": _cmd_joint,
    "conditional": _cmd_conditional,
    "ingest": _cmd_ingest,
    "grade": _cmd_grade,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        cfg = merge_config(args)
        return _RUNNERS[args.command](cfg)
    except ValidationError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
