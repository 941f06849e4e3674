"""Figure rendering for validation reports.

Uses the non-interactive Agg backend so figures render identically in
headless runs.  Each function writes one image file and returns its path.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .report import PlotRow


def _error_bars(rows: list[PlotRow]) -> tuple[list[float], list[list[float]]]:
    values = [value for _, value, _, _ in rows]
    lower = [value - lo for _, value, lo, _ in rows]
    upper = [hi - value for _, value, _, hi in rows]
    return values, [lower, upper]


def plot_error_comparison(rows: list[PlotRow], path: str | Path) -> Path:
    """Bar chart of mean squared errors with 95% confidence intervals."""
    path = Path(path)
    labels = [label for label, _, _, _ in rows]
    values, yerr = _error_bars(rows)
    fig, ax = plt.subplots(figsize=(5.0, 3.5))
    ax.bar(labels, values, width=0.55, color=["#b0b0b0", "#3b6ea5"], edgecolor="black")
    ax.errorbar(labels, values, yerr=yerr, fmt="none", ecolor="black", capsize=4)
    ax.set_ylabel("mean squared error")
    ax.set_title("per-player squared error by estimator")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_residuals(rows: list[PlotRow], path: str | Path) -> Path:
    """Mean residual per stack-size stratum with 95% confidence intervals."""
    path = Path(path)
    labels = [label for label, _, _, _ in rows]
    values, yerr = _error_bars(rows)
    fig, ax = plt.subplots(figsize=(5.0, 3.5))
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.errorbar(
        range(len(labels)), values, yerr=yerr,
        fmt="o", color="#3b6ea5", ecolor="black", capsize=4,
    )
    ax.set_xticks(range(len(labels)), labels)
    ax.set_ylabel("mean residual (observed - estimated)")
    ax.set_title("residuals by stack-size stratum")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
