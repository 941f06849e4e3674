"""Report rendering: JSON, aligned text tables, and plot-data files.

JSON output keeps full float precision for scripting; the text tables are
for reading at the terminal.  Plot-data files are small CSVs (label, value,
ci_low, ci_high) with 95% confidence intervals, consumed by the figure
functions and by external tooling.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from .ingest import IngestReport
from .stats import INDEPENDENCE_CAVEAT, PairedErrorReport, StratumReport
from .tdist import student_t_critical

PlotRow = tuple[str, float, float, float]


def paired_report_to_dict(report: PairedErrorReport) -> dict:
    return {
        "mse_baseline": report.mse_baseline,
        "se_mse_baseline": report.se_mse_baseline,
        "mse_icm": report.mse_icm,
        "se_mse_icm": report.se_mse_icm,
        "t_statistic": report.t_statistic,
        "degrees_of_freedom": report.degrees_of_freedom,
        "p_value_one_sided": report.p_value_one_sided,
        "n_players": report.n_players,
        "caveat": INDEPENDENCE_CAVEAT,
    }


def strata_reports_to_dict(reports: tuple[StratumReport, ...]) -> dict:
    return {
        "strata": [
            {
                "stratum": r.stratum,
                "mean_residual": r.mean_residual,
                "se_residual": r.se_residual,
                "t_statistic": r.t_statistic,
                "degrees_of_freedom": r.degrees_of_freedom,
                "p_value_two_sided": r.p_value_two_sided,
                "n_players": r.n_players,
            }
            for r in reports
        ],
        "caveat": INDEPENDENCE_CAVEAT,
    }


def ingest_report_to_dict(report: IngestReport) -> dict:
    return {
        "events_in": report.events_in,
        "events_deduped": report.events_deduped,
        "snapshots_kept": report.snapshots_kept,
        "snapshots_dropped_1player": report.snapshots_dropped_1player,
        "snapshots_dropped_unmatched": report.snapshots_dropped_unmatched,
        "players_total": report.players_total,
    }


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _fmt(value: float | None, pattern: str = "{: .6e}") -> str:
    return "n/a" if value is None else pattern.format(value)


def render_paired_text(report: PairedErrorReport) -> str:
    lines = [
        "equity estimator comparison (per-player squared error)",
        "",
        "  estimator     MSE            SE of MSE",
        f"  rank-order   {_fmt(report.mse_baseline)}  {_fmt(report.se_mse_baseline)}",
        f"  chip model   {_fmt(report.mse_icm)}  {_fmt(report.se_mse_icm)}",
        "",
        "  one-sided paired t-test, alternative: rank-order error > chip-model error",
        f"  t = {report.t_statistic:.4f}, df = {report.degrees_of_freedom}, "
        f"p = {report.p_value_one_sided:.6g}, players = {report.n_players}",
        "",
        f"  note: {INDEPENDENCE_CAVEAT}",
    ]
    return "\n".join(lines) + "\n"


def render_strata_text(reports: tuple[StratumReport, ...]) -> str:
    lines = [
        "chip-model residuals by stack-size stratum (observed - estimated)",
        "",
        "  stratum   mean residual   SE             t          df      p (two-sided)   players",
    ]
    for r in reports:
        t = "n/a" if r.t_statistic is None else f"{r.t_statistic: .4f}"
        df = "n/a" if r.degrees_of_freedom is None else str(r.degrees_of_freedom)
        lines.append(
            f"  {r.stratum:<8}  {_fmt(r.mean_residual)}  {_fmt(r.se_residual)}  "
            f"{t:<9}  {df:<6}  {_fmt(r.p_value_two_sided, '{:.6g}'):<14}  {r.n_players}"
        )
    lines += ["", f"  note: {INDEPENDENCE_CAVEAT}"]
    return "\n".join(lines) + "\n"


def render_ingest_text(report: IngestReport) -> str:
    lines = [
        "ingest summary",
        f"  events in:                  {report.events_in}",
        f"  events after dedupe:        {report.events_deduped}",
        f"  snapshots kept:             {report.snapshots_kept}",
        f"  snapshots dropped (1 player): {report.snapshots_dropped_1player}",
        f"  snapshots dropped (unmatched): {report.snapshots_dropped_unmatched}",
        f"  players total:              {report.players_total}",
    ]
    return "\n".join(lines) + "\n"


def _interval(value: float, se: float | None, df: int | None) -> tuple[float, float]:
    # 95% CI; degenerate (zero-width) when no SE is available
    if se is None or df is None or df < 1:
        return value, value
    half = student_t_critical(df, 0.025) * se
    return value - half, value + half


def paired_plot_rows(report: PairedErrorReport) -> list[PlotRow]:
    df = report.n_players - 1
    rows = []
    for label, value, se in (
        ("rank-order", report.mse_baseline, report.se_mse_baseline),
        ("chip model", report.mse_icm, report.se_mse_icm),
    ):
        lo, hi = _interval(value, se, df)
        rows.append((label, value, lo, hi))
    return rows


def strata_plot_rows(reports: tuple[StratumReport, ...]) -> list[PlotRow]:
    rows = []
    for r in reports:
        if r.mean_residual is None:
            continue
        lo, hi = _interval(r.mean_residual, r.se_residual, r.degrees_of_freedom)
        rows.append((r.stratum, r.mean_residual, lo, hi))
    return rows


def write_plot_data(rows: list[PlotRow], path: str | Path) -> None:
    """CSV with header label, value, ci_low, ci_high; floats at full precision."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["label", "value", "ci_low", "ci_high"])
        for label, value, lo, hi in rows:
            writer.writerow([label, repr(value), repr(lo), repr(hi)])
