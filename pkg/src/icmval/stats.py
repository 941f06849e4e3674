"""Validation experiments: paired error comparison and residual stratification.

Experiment 1 scores chip-model equity and rank-order equity against observed
outcomes by per-player squared error and runs a one-sided paired t-test on
the error differences.  Experiment 2 keeps only small fields, computes exact
residuals (observed minus estimated, so a positive mean reads as the model
underestimating), splits players into stack-size strata, and t-tests each
stratum mean against zero.

All accumulation happens in (event_id, day_label) sorted order so results
are independent of input ordering and of any caller-side parallelism.
"""

from __future__ import annotations

import dataclasses
import hashlib
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .baseline import baseline_equity
from .exact import ExactConfig, icm_equity
from .mc import McConfig, icm_equity_mc
from .model import ModelError, SnapshotRecord, normalize_stacks
from .tdist import student_t_sf

Stratum = Literal["large", "medium", "small"]

STRATA: tuple[Stratum, ...] = ("large", "medium", "small")

# fixed caveat embedded in every rendered report
INDEPENDENCE_CAVEAT = (
    "p-values treat per-player observations as independent; players in one "
    "snapshot share an event, so effective sample sizes are smaller than the "
    "reported counts."
)


class ZeroVarianceError(ModelError):
    """Raised when a t-test is requested on values with no variance."""


@dataclass(frozen=True)
class PairedErrorReport:
    """Experiment-1 result: both mean squared errors and the paired test."""

    mse_baseline: float
    se_mse_baseline: float
    mse_icm: float
    se_mse_icm: float
    t_statistic: float
    degrees_of_freedom: int
    p_value_one_sided: float
    n_players: int

    def __post_init__(self) -> None:
        if self.n_players < 2:
            raise ModelError(f"n_players must be >= 2, got {self.n_players}")
        if self.se_mse_baseline < 0.0 or self.se_mse_icm < 0.0:
            raise ModelError("standard errors must be non-negative")
        if not 0.0 <= self.p_value_one_sided <= 1.0:
            raise ModelError(f"p-value out of range: {self.p_value_one_sided}")


@dataclass(frozen=True)
class StratumReport:
    """Experiment-2 result for one stack-size stratum.

    Test fields are None when the stratum has fewer than 2 members or zero
    residual variance; mean_residual is None only for an empty stratum.
    """

    stratum: Stratum
    mean_residual: float | None
    se_residual: float | None
    t_statistic: float | None
    degrees_of_freedom: int | None
    p_value_two_sided: float | None
    n_players: int

    def __post_init__(self) -> None:
        if self.stratum not in STRATA:
            raise ModelError(f"unknown stratum {self.stratum!r}")
        if self.n_players < 0:
            raise ModelError(f"n_players must be >= 0, got {self.n_players}")
        if (self.mean_residual is None) != (self.n_players == 0):
            raise ModelError("mean_residual must be present exactly when the stratum is non-empty")
        if self.p_value_two_sided is not None and not 0.0 <= self.p_value_two_sided <= 1.0:
            raise ModelError(f"p-value out of range: {self.p_value_two_sided}")


def _sample_sd(values: np.ndarray) -> float:
    return float(values.std(ddof=1))


def paired_t_one_sided(errors_a: Sequence[float], errors_b: Sequence[float]) -> tuple[float, int, float]:
    """One-sided paired t-test with alternative mean(a) > mean(b).

    Returns (t, df, p).  The test runs on the pairwise differences, so the
    two sequences must align element by element.
    """
    a = np.asarray(errors_a, dtype=np.float64)
    b = np.asarray(errors_b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ModelError(f"paired samples must be 1-d and equal length, got {a.shape} vs {b.shape}")
    n = a.size
    if n < 2:
        raise ModelError(f"need at least 2 pairs, got {n}")
    d = a - b
    sd = _sample_sd(d)
    if sd == 0.0:
        raise ZeroVarianceError("all pairwise differences are identical; t-test undefined")
    t = float(d.mean() / (sd / math.sqrt(n)))
    df = n - 1
    return t, df, student_t_sf(t, df)


def one_sample_t_two_sided(values: Sequence[float]) -> tuple[float, int, float]:
    """Two-sided one-sample t-test of mean zero.  Returns (t, df, p)."""
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or v.size < 2:
        raise ModelError(f"need a 1-d sample of at least 2 values, got shape {v.shape}")
    sd = _sample_sd(v)
    if sd == 0.0:
        raise ZeroVarianceError("sample has zero variance; t-test undefined")
    n = v.size
    t = float(v.mean() / (sd / math.sqrt(n)))
    df = n - 1
    return t, df, 2.0 * student_t_sf(abs(t), df)


def _snapshot_seed(base_seed: int, snapshot: SnapshotRecord) -> int:
    # stable per-snapshot stream so results survive reordering of the input
    tag = f"{base_seed}|{snapshot.event_id}|{snapshot.day_label}".encode()
    return int.from_bytes(hashlib.blake2b(tag, digest_size=8).digest(), "big")


def _model_equity(
    snapshot: SnapshotRecord,
    exact_cfg: ExactConfig,
    mc_cfg: McConfig,
) -> np.ndarray:
    stacks = normalize_stacks(snapshot.chips)
    ladder = snapshot.payout_ladder()
    if snapshot.player_count <= exact_cfg.max_players_exact:
        return np.asarray(icm_equity(stacks, ladder, exact_cfg).equities)
    seeded = dataclasses.replace(mc_cfg, seed=_snapshot_seed(mc_cfg.seed, snapshot))
    return np.asarray(icm_equity_mc(stacks, ladder, seeded).equities)


def snapshot_squared_errors(
    snapshot: SnapshotRecord,
    exact_cfg: ExactConfig | None = None,
    mc_cfg: McConfig | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-player squared errors (model, rank-order) against the targets."""
    exact_cfg = exact_cfg or ExactConfig()
    mc_cfg = mc_cfg or McConfig()
    targets = np.asarray(snapshot.targets)
    model = _model_equity(snapshot, exact_cfg, mc_cfg)
    ranked = np.asarray(baseline_equity(snapshot.chips, snapshot.payout_ladder()).equities)
    return (model - targets) ** 2, (ranked - targets) ** 2


def _sorted_snapshots(snapshots: Sequence[SnapshotRecord]) -> list[SnapshotRecord]:
    return sorted(snapshots, key=lambda s: (s.event_id, s.day_label))


def experiment1(
    snapshots: Sequence[SnapshotRecord],
    exact_cfg: ExactConfig | None = None,
    mc_cfg: McConfig | None = None,
) -> PairedErrorReport:
    """Score the chip model against the rank-order assignment, paired by player."""
    if not snapshots:
        raise ModelError("experiment needs at least one snapshot")
    exact_cfg = exact_cfg or ExactConfig()
    mc_cfg = mc_cfg or McConfig()
    model_sq: list[np.ndarray] = []
    ranked_sq: list[np.ndarray] = []
    for snapshot in _sorted_snapshots(snapshots):
        m, r = snapshot_squared_errors(snapshot, exact_cfg, mc_cfg)
        model_sq.append(m)
        ranked_sq.append(r)
    model_all = np.concatenate(model_sq)
    ranked_all = np.concatenate(ranked_sq)
    n = model_all.size
    t, df, p = paired_t_one_sided(ranked_all, model_all)
    return PairedErrorReport(
        mse_baseline=float(ranked_all.mean()),
        se_mse_baseline=_sample_sd(ranked_all) / math.sqrt(n),
        mse_icm=float(model_all.mean()),
        se_mse_icm=_sample_sd(model_all) / math.sqrt(n),
        t_statistic=t,
        degrees_of_freedom=df,
        p_value_one_sided=p,
        n_players=n,
    )


def stratify_quartiles(snapshot: SnapshotRecord) -> tuple[Stratum, ...]:
    """Label each player large/medium/small by stack-size quartile.

    The top max(1, n//4) stacks are large and the bottom as many are small;
    ties at the boundaries resolve by input position.
    """
    n = snapshot.player_count
    k = max(1, n // 4)
    order = np.argsort(-np.asarray(snapshot.chips, dtype=np.float64), kind="stable")
    labels: list[Stratum] = ["medium"] * n
    for i in order[:k]:
        labels[int(i)] = "large"
    for i in order[n - k:]:
        labels[int(i)] = "small"
    return tuple(labels)


def experiment2(
    snapshots: Sequence[SnapshotRecord],
    exact_cfg: ExactConfig | None = None,
) -> tuple[StratumReport, StratumReport, StratumReport]:
    """Residual analysis by stack size, on exactly-solvable snapshots only.

    Snapshots larger than the exact-computation cutoff are filtered out so
    every residual is free of simulation noise.  Returns reports in the
    order (large, medium, small).
    """
    exact_cfg = exact_cfg or ExactConfig()
    kept = [s for s in _sorted_snapshots(snapshots) if s.player_count <= exact_cfg.max_players_exact]
    if not kept:
        raise ModelError(
            f"no snapshots with at most {exact_cfg.max_players_exact} players; nothing to stratify"
        )
    residuals: dict[Stratum, list[float]] = {name: [] for name in STRATA}
    for snapshot in kept:
        targets = np.asarray(snapshot.targets)
        equity = np.asarray(
            icm_equity(normalize_stacks(snapshot.chips), snapshot.payout_ladder(), exact_cfg).equities
        )
        labels = stratify_quartiles(snapshot)
        for label, residual in zip(labels, targets - equity):
            residuals[label].append(float(residual))
    return (
        _stratum_report("large", residuals["large"]),
        _stratum_report("medium", residuals["medium"]),
        _stratum_report("small", residuals["small"]),
    )


def _stratum_report(name: Stratum, residuals: list[float]) -> StratumReport:
    n = len(residuals)
    if n == 0:
        return StratumReport(name, None, None, None, None, None, 0)
    values = np.asarray(residuals)
    mean = float(values.mean())
    if n < 2:
        return StratumReport(name, mean, None, None, None, None, n)
    se = _sample_sd(values) / math.sqrt(n)
    try:
        t, df, p = one_sample_t_two_sided(values)
    except ZeroVarianceError:
        return StratumReport(name, mean, se, None, None, None, n)
    return StratumReport(name, mean, se, t, df, p, n)
