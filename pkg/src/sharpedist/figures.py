"""Matplotlib rendering of the figure-ready data the CLI emits.

Everything here uses the object-oriented API (explicit Figure, Agg canvas),
never pyplot, so rendering works headless and holds no global state. Each
function writes one PNG next to the delimited data it depicts.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .conditional import ConditionalCurve, MonotonicityReport
from .montecarlo import Histogram

_DPI = 150


def _save(fig: Figure, path) -> None:
    # temp-then-rename so an interrupted run never leaves a truncated PNG
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    fig.savefig(tmp, format="png")
    os.replace(tmp, path)


def _figure(width: float = 7.0, height: float = 4.5) -> tuple[Figure, object]:
    fig = Figure(figsize=(width, height), dpi=_DPI)
    FigureCanvasAgg(fig)
    return fig, fig.subplots()


def save_sharpe_distribution(
    hist: Histogram, density_x: np.ndarray, density_y: np.ndarray, path
) -> None:
    """Empirical Sharpe histogram with the asymptotic normal curve overlaid."""
    fig, ax = _figure()
    centers = 0.5 * (hist.edges[:-1] + hist.edges[1:])
    ax.bar(
        centers, hist.density, width=hist.widths, color="#9ecae1",
        edgecolor="#6baed6", linewidth=0.3, label="simulated",
    )
    ax.plot(density_x, density_y, color="#d62728", linewidth=1.5, label="asymptotic normal")
    ax.set_xlabel("Sharpe ratio S")
    ax.set_ylabel("density")
    ax.set_title("Sampling distribution of the Sharpe ratio")
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)


def save_joint_scatter(
    m: np.ndarray, s: np.ndarray, sharpe: np.ndarray, path, max_points: int = 20000
) -> None:
    """Two panels: volatility vs mean return, and Sharpe vs mean return."""
    step = max(1, int(np.ceil(m.size / max_points)))
    sub = slice(None, None, step)
    fig = Figure(figsize=(10.0, 4.2), dpi=_DPI)
    FigureCanvasAgg(fig)
    ax_left, ax_right = fig.subplots(1, 2)
    ax_left.scatter(m[sub], s[sub], s=2, alpha=0.25, color="#3182bd", linewidths=0)
    ax_left.set_xlabel("mean return m")
    ax_left.set_ylabel("volatility s")
    ax_left.set_title("joint (m, s) samples")
    ax_right.scatter(m[sub], sharpe[sub], s=2, alpha=0.25, color="#756bb1", linewidths=0)
    ax_right.set_xlabel("mean return m")
    ax_right.set_ylabel("Sharpe ratio S")
    ax_right.set_title("joint (m, S) samples")
    fig.tight_layout()
    _save(fig, path)


def save_conditional_curve(
    curve: ConditionalCurve, report: MonotonicityReport | None, path
) -> None:
    """Conditional mean Sharpe against the return threshold, peak marked."""
    fig, ax = _figure()
    defined = curve.defined
    ax.plot(
        curve.thresholds[defined], curve.values[defined],
        color="#2ca25f", linewidth=1.5,
    )
    ses = curve.standard_errors[defined]
    ax.fill_between(
        curve.thresholds[defined],
        curve.values[defined] - 2 * ses,
        curve.values[defined] + 2 * ses,
        color="#2ca25f", alpha=0.2, linewidth=0,
    )
    if report is not None:
        ax.axvline(report.peak_threshold, color="#636363", linewidth=0.8, linestyle="--")
        ax.set_title(f"conditional mean Sharpe ({report.classification})")
    else:
        ax.set_title("conditional mean Sharpe")
    ax.set_xlabel("mean-return threshold m")
    ax.set_ylabel("mean S over samples with mean return >= m")
    fig.tight_layout()
    _save(fig, path)


def save_return_density(
    hist: Histogram,
    x: np.ndarray,
    gaussian_y: np.ndarray,
    student_y: np.ndarray,
    path,
) -> None:
    """Pooled return histogram on a log scale with both fitted densities."""
    fig, ax = _figure()
    centers = 0.5 * (hist.edges[:-1] + hist.edges[1:])
    dens = hist.density
    nonzero = dens > 0
    ax.plot(
        centers[nonzero], dens[nonzero], linestyle="none", marker="o",
        markersize=2.5, color="#636363", label="pooled returns",
    )
    ax.plot(x, gaussian_y, color="#3182bd", linewidth=1.2, label="gaussian fit")
    ax.plot(x, student_y, color="#d62728", linewidth=1.2, label="student fit")
    ax.set_yscale("log")
    floor = float(dens[nonzero].min()) if nonzero.any() else 1e-6
    ax.set_ylim(bottom=max(floor * 0.3, 1e-12))
    ax.set_xlabel("daily excess return")
    ax.set_ylabel("density")
    ax.set_title("pooled return distribution")
    ax.legend(frameon=False)
    fig.tight_layout()
    _save(fig, path)
