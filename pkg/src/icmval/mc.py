"""Monte Carlo equity estimation for fields too large to enumerate.

Finish orders are drawn by an exponential race: player ``i`` gets an arrival
time ``E_i / x_i`` with ``E_i`` standard exponential, and players finish in
arrival order.  The first arrival is player ``i`` with probability ``x_i``,
and by memorylessness every later pick follows the renormalized shares, so
the race realizes the sequential chip-share scheme exactly.

Simulation runs in batches.  Each batch draws from its own counter-based
Philox stream keyed by (seed, batch index), so batches could be evaluated in
parallel and merged in any order without changing the result; single-threaded
output is the reference either way.  After each batch, once the minimum
simulation count is reached, the estimator stops as soon as every player's
standard error of the mean sampled prize is below the tolerance, or at the
simulation cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import EquityVector, FinishMatrix, ModelError, PayoutLadder, StackDistribution


@dataclass(frozen=True)
class McConfig:
    """Stopping-rule parameters for the Monte Carlo estimator."""

    se_tolerance: float = 0.001
    max_sims: int = 10_000
    min_sims: int = 100
    batch_size: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if not self.se_tolerance > 0.0:
            raise ModelError(f"se_tolerance must be positive, got {self.se_tolerance}")
        if not 0 < self.min_sims <= self.max_sims:
            raise ModelError(f"need 0 < min_sims <= max_sims, got {self.min_sims}, {self.max_sims}")
        if self.batch_size < 1:
            raise ModelError(f"batch_size must be >= 1, got {self.batch_size}")
        if not 0 <= self.seed < 2**64:
            raise ModelError("seed must be a 64-bit unsigned integer")


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    # independent stream per batch: 128-bit Philox key = (batch index, seed)
    return np.random.Generator(np.random.Philox(key=(batch_index << 64) | seed))


def sample_finish_order(stacks: StackDistribution, rng: np.random.Generator) -> tuple[int, ...]:
    """Draw one finish order; element ``j`` is the player finishing place ``j + 1``."""
    x = np.asarray(stacks.fractions)
    race = rng.standard_exponential(x.size) / x
    return tuple(int(i) for i in np.argsort(race, kind="stable"))


def _sample_places(x: np.ndarray, rng: np.random.Generator, size: int) -> np.ndarray:
    """(size, n) array; row s lists players in finishing order."""
    race = rng.standard_exponential((size, x.size)) / x
    return np.argsort(race, axis=1, kind="stable")


def simulate_prize_draws(
    stacks: StackDistribution,
    payouts: PayoutLadder,
    cfg: McConfig | None = None,
) -> np.ndarray:
    """Run the batched simulation; row s holds every player's prize in draw s.

    The number of rows is where the stopping rule fired, always within
    [min_sims, max_sims].
    """
    cfg = cfg or McConfig()
    n = stacks.player_count
    if payouts.place_count != n:
        raise ModelError(
            f"payout ladder has {payouts.place_count} places for {n} players; use normalize_payouts first"
        )
    x = np.array(stacks.fractions)
    prizes = np.array(payouts.prizes)
    rows: list[np.ndarray] = []
    done = 0
    batch = 0
    while True:
        size = min(cfg.batch_size, cfg.max_sims - done)
        places = _sample_places(x, _batch_rng(cfg.seed, batch), size)
        sampled = np.empty((size, n))
        sampled[np.arange(size)[:, None], places] = prizes[None, :]
        rows.append(sampled)
        done += size
        batch += 1
        if done < cfg.min_sims:
            continue
        if done >= 2:
            se = np.concatenate(rows).std(axis=0, ddof=1) / math.sqrt(done)
            if se.max() < cfg.se_tolerance:
                break
        if done >= cfg.max_sims:
            break
    return np.concatenate(rows) if len(rows) > 1 else rows[0]


def icm_equity_mc(
    stacks: StackDistribution,
    payouts: PayoutLadder,
    cfg: McConfig | None = None,
) -> EquityVector:
    """Estimate per-player equity by simulation, with standard errors.

    Fully reproducible for a fixed seed.  The returned standard errors are
    the per-player standard errors of the mean sampled prize at the moment
    the stopping rule fired.
    """
    draws = simulate_prize_draws(stacks, payouts, cfg)
    m = draws.shape[0]
    means = draws.mean(axis=0)
    se = draws.std(axis=0, ddof=1) / math.sqrt(m) if m >= 2 else np.full(draws.shape[1], np.inf)
    return EquityVector(tuple(float(v) for v in means), tuple(float(s) for s in se))


def finish_probabilities_mc(stacks: StackDistribution, cfg: McConfig | None = None) -> FinishMatrix:
    """Empirical finish-frequency matrix under the same stopping rule.

    The stopping rule is applied to the standard error of every matrix cell
    (each cell is a mean of place indicators).
    """
    cfg = cfg or McConfig()
    n = stacks.player_count
    x = np.array(stacks.fractions)
    counts = np.zeros((n, n))
    cols = np.arange(n)
    done = 0
    batch = 0
    while True:
        size = min(cfg.batch_size, cfg.max_sims - done)
        places = _sample_places(x, _batch_rng(cfg.seed, batch), size)
        np.add.at(counts, (places.ravel(), np.tile(cols, size)), 1.0)
        done += size
        batch += 1
        if done < cfg.min_sims:
            continue
        if done >= 2:
            freq = counts / done
            # sample sd of a 0/1 indicator with mean p: sqrt(p(1-p) * m/(m-1))
            cell_var = freq * (1.0 - freq) * (done / (done - 1))
            if math.sqrt(cell_var.max() / done) < cfg.se_tolerance:
                break
        if done >= cfg.max_sims:
            break
    return FinishMatrix(counts / done)
