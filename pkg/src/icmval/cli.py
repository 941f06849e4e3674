"""Command-line interface.

Subcommands: equity and probs for one-off computations, ingest for dataset
preparation, validate and stratify for the two validation experiments.
Exit codes: 0 success, 1 usage error, 2 data or domain error.  Reports go
to standard output; with --out, JSON reports, plot-data CSVs, and rendered
figures are written into the given directory.  The ICMVAL_DATA_DIR
environment variable supplies the default --data path.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .exact import ExactConfig, finish_probabilities, icm_equity
from .ingest import export_snapshots_csv, run_ingest, write_rejects_json
from .mc import McConfig, finish_probabilities_mc, icm_equity_mc
from .model import ModelError, SnapshotRecord, normalize_payouts, normalize_stacks
from .report import (
    ingest_report_to_dict,
    paired_plot_rows,
    paired_report_to_dict,
    render_ingest_text,
    render_paired_text,
    render_strata_text,
    strata_plot_rows,
    strata_reports_to_dict,
    to_json,
    write_plot_data,
)
from .stats import experiment1, experiment2
from .synthetic import generate_snapshots

DATA_DIR_ENV = "ICMVAL_DATA_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage problems exit 1; argparse's default of 2 is reserved for data errors
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one value")
    return values


def _csv_floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="simulation seed (default 0)")
    common.add_argument("--tolerance", type=float, default=0.001,
                        help="standard-error stopping tolerance (default 0.001)")
    common.add_argument("--max-sims", type=int, default=10_000,
                        help="simulation cap (default 10000)")
    common.add_argument("--min-sims", type=int, default=100,
                        help="minimum simulations before stopping (default 100)")
    common.add_argument("--exact-cutoff", type=int, default=10,
                        help="largest player count computed exactly (default 10)")
    common.add_argument("--output-format", choices=("table", "json"), default="table",
                        help="stdout format (default table)")

    parser = _Parser(prog="icmval", description="chip-model equity computation and validation")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p_equity = sub.add_parser("equity", parents=[common], help="per-player prize equity")
    p_equity.add_argument("--stacks", type=_csv_ints, required=True,
                          help="comma-separated chip counts")
    p_equity.add_argument("--payouts", type=_csv_floats, required=True,
                          help="comma-separated prizes, best place first")
    p_equity.add_argument("--method", choices=("exact", "mc", "auto"), default="auto")
    p_equity.set_defaults(func=cmd_equity)

    p_probs = sub.add_parser("probs", parents=[common], help="finish-probability matrix")
    p_probs.add_argument("--stacks", type=_csv_ints, required=True,
                         help="comma-separated chip counts")
    p_probs.add_argument("--method", choices=("exact", "mc", "auto"), default="auto")
    p_probs.set_defaults(func=cmd_probs)

    p_ingest = sub.add_parser("ingest", parents=[common], help="build snapshots from raw events")
    p_ingest.add_argument("--data", help=f"NDJSON file or directory (default ${DATA_DIR_ENV})")
    p_ingest.add_argument("--out", help="directory for snapshots.csv, report, and rejects")
    p_ingest.set_defaults(func=cmd_ingest)

    p_validate = sub.add_parser("validate", parents=[common],
                                help="paired error comparison against observed finishes")
    p_stratify = sub.add_parser("stratify", parents=[common],
                                help="residual analysis by stack-size stratum")
    for p in (p_validate, p_stratify):
        p.add_argument("--data", help=f"NDJSON file or directory (default ${DATA_DIR_ENV})")
        p.add_argument("--synthetic", type=int, metavar="N",
                       help="use N generated snapshots instead of --data")
        p.add_argument("--out", help="directory for the report, plot data, and figure")
    p_validate.set_defaults(func=cmd_validate)
    p_stratify.set_defaults(func=cmd_stratify)
    return parser


def _mc_config(args: argparse.Namespace) -> McConfig:
    return McConfig(
        se_tolerance=args.tolerance,
        max_sims=args.max_sims,
        min_sims=args.min_sims,
        seed=args.seed,
    )


def _pick_method(args: argparse.Namespace, n: int) -> str:
    if args.method != "auto":
        return args.method
    return "exact" if n <= args.exact_cutoff else "mc"


def cmd_equity(args: argparse.Namespace) -> int:
    n = len(args.stacks)
    stacks = normalize_stacks(args.stacks)
    ladder = normalize_payouts(args.payouts, n)
    method = _pick_method(args, n)
    if method == "exact":
        result = icm_equity(stacks, ladder, ExactConfig(max_players_exact=args.exact_cutoff))
    else:
        result = icm_equity_mc(stacks, ladder, _mc_config(args))
    if args.output_format == "json":
        payload = {
            "method": method,
            "equities": list(result.equities),
            "standard_errors": None if result.standard_errors is None else list(result.standard_errors),
        }
        sys.stdout.write(to_json(payload))
    else:
        for i, equity in enumerate(result.equities, start=1):
            se = "" if result.standard_errors is None else f"  (se {result.standard_errors[i - 1]:.8f})"
            print(f"player {i}: {equity:.8f}{se}")
    return 0


def cmd_probs(args: argparse.Namespace) -> int:
    n = len(args.stacks)
    stacks = normalize_stacks(args.stacks)
    method = _pick_method(args, n)
    if method == "exact":
        matrix = finish_probabilities(stacks, ExactConfig(max_players_exact=args.exact_cutoff))
    else:
        matrix = finish_probabilities_mc(stacks, _mc_config(args))
    probs = matrix.probabilities
    if args.output_format == "json":
        payload = {"method": method, "finish_probabilities": [list(row) for row in probs]}
        sys.stdout.write(to_json(payload))
    else:
        header = "          " + "  ".join(f"place {p + 1:>2}" for p in range(n))
        print(header)
        for i in range(n):
            cells = "  ".join(f"{probs[i, p]:.6f}" for p in range(n))
            print(f"player {i + 1:>2}  {cells}")
    return 0


def _data_path(args: argparse.Namespace) -> str:
    data = args.data or os.environ.get(DATA_DIR_ENV)
    if not data:
        raise UsageError(f"no --data given and {DATA_DIR_ENV} is not set")
    return data


def _load_snapshots(args: argparse.Namespace) -> list[SnapshotRecord]:
    if getattr(args, "synthetic", None) is not None:
        if args.synthetic < 1:
            raise UsageError("--synthetic needs a positive snapshot count")
        return generate_snapshots(args.synthetic, args.seed)
    snapshots, _, _ = run_ingest(_data_path(args))
    return snapshots


def _out_dir(args: argparse.Namespace) -> Path | None:
    if not args.out:
        return None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_ingest(args: argparse.Namespace) -> int:
    snapshots, report, rejects = run_ingest(_data_path(args))
    out = _out_dir(args)
    if out is not None:
        export_snapshots_csv(snapshots, out / "snapshots.csv")
        write_rejects_json(rejects, out / "rejects.json")
        (out / "ingest_report.json").write_text(to_json(ingest_report_to_dict(report)))
    if args.output_format == "json":
        payload = {**ingest_report_to_dict(report), "rejects": len(rejects)}
        sys.stdout.write(to_json(payload))
    else:
        sys.stdout.write(render_ingest_text(report))
        print(f"  rejected records:           {len(rejects)}")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    snapshots = _load_snapshots(args)
    exact_cfg = ExactConfig(max_players_exact=args.exact_cutoff)
    report = experiment1(snapshots, exact_cfg, _mc_config(args))
    out = _out_dir(args)
    if out is not None:
        (out / "validation_report.json").write_text(to_json(paired_report_to_dict(report)))
        rows = paired_plot_rows(report)
        write_plot_data(rows, out / "validation_plot_data.csv")
        from .figures import plot_error_comparison

        plot_error_comparison(rows, out / "validation_mse.png")
    if args.output_format == "json":
        sys.stdout.write(to_json(paired_report_to_dict(report)))
    else:
        sys.stdout.write(render_paired_text(report))
    return 0


def cmd_stratify(args: argparse.Namespace) -> int:
    snapshots = _load_snapshots(args)
    exact_cfg = ExactConfig(max_players_exact=args.exact_cutoff)
    reports = experiment2(snapshots, exact_cfg)
    out = _out_dir(args)
    if out is not None:
        (out / "strata_report.json").write_text(to_json(strata_reports_to_dict(reports)))
        rows = strata_plot_rows(reports)
        write_plot_data(rows, out / "strata_plot_data.csv")
        from .figures import plot_residuals

        plot_residuals(rows, out / "strata_residuals.png")
    if args.output_format == "json":
        sys.stdout.write(to_json(strata_reports_to_dict(reports)))
    else:
        sys.stdout.write(render_strata_text(reports))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"icmval: error: {exc}", file=sys.stderr)
        return 1
    except (ModelError, OSError) as exc:
        print(f"icmval: error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
