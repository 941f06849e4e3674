"""Exact finish probabilities and equity under the independent chip model.

Two engines compute the same math:

* ``naive_enumeration`` sums over every finish permutation.  Factorial cost
  keeps it to seven players, but it is kept permanently as the test oracle.
* ``subset_dp`` runs over player subsets instead of permutations.  For every
  subset ``S`` it accumulates the total probability ``g(S)`` that exactly the
  players in ``S`` fill the top ``|S|`` places in some order; the chance that
  player ``i`` then takes the next place is ``x_i / (1 - sum(S))``.  Cost is
  O(2^n * n) against O(n * n!), which keeps ten players instant.

Both engines force the final conditional probability to one analytically:
with one player left the denominator equals that player's own fraction, and
computing the quotient would only add rounding noise.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Literal

import numpy as np

from .model import EquityVector, FinishMatrix, ModelError, PayoutLadder, StackDistribution

#: Hard player bound of the enumeration oracle (7! = 5,040 permutations).
NAIVE_LIMIT = 7

Engine = Literal["naive_enumeration", "subset_dp", "auto"]

_ENGINES = ("naive_enumeration", "subset_dp", "auto")


class ExactLimitError(ModelError):
    """Player count exceeds the exact engine's bound; fall back to Monte Carlo."""


@dataclass(frozen=True)
class ExactConfig:
    """Settings for exact computation; ``auto`` selects the subset DP."""

    max_players_exact: int = 10
    engine: Engine = "auto"

    def __post_init__(self) -> None:
        if self.max_players_exact < 1:
            raise ModelError(f"max_players_exact must be >= 1, got {self.max_players_exact}")
        if self.engine not in _ENGINES:
            raise ModelError(f"unknown engine {self.engine!r}, expected one of {_ENGINES}")


def finish_probabilities_naive(stacks: StackDistribution) -> FinishMatrix:
    """Finish matrix by enumerating all finish orders.  Oracle only, n <= 7."""
    n = stacks.player_count
    if n > NAIVE_LIMIT:
        raise ExactLimitError(f"enumeration oracle is bounded at {NAIVE_LIMIT} players, got {n}")
    x = np.array(stacks.fractions)
    perms = np.array(list(permutations(range(n))), dtype=np.intp)
    shares = x[perms]
    # denominator for place j is 1 - (shares placed before j)
    denom = 1.0 - np.cumsum(shares, axis=1) + shares
    cond = shares / denom
    cond[:, -1] = 1.0
    weights = np.prod(cond, axis=1)
    matrix = np.empty((n, n))
    for place in range(n):
        matrix[:, place] = np.bincount(perms[:, place], weights=weights, minlength=n)
    return FinishMatrix(matrix)


def _finish_matrix_subset_dp(x: np.ndarray) -> np.ndarray:
    n = x.size
    full = (1 << n) - 1
    xs = x.tolist()
    placed_share = [0.0] * (full + 1)
    for mask in range(1, full + 1):
        low = mask & -mask
        placed_share[mask] = placed_share[mask ^ low] + xs[low.bit_length() - 1]
    # reach[S] = probability that exactly S fills the top |S| places
    reach = [0.0] * (full + 1)
    reach[0] = 1.0
    matrix = np.zeros((n, n))
    for mask in range(full):
        g = reach[mask]
        place = mask.bit_count()
        remaining = 1.0 - placed_share[mask]
        last = place == n - 1
        free = full ^ mask
        while free:
            low = free & -free
            free ^= low
            i = low.bit_length() - 1
            c = g if last else g * xs[i] / remaining
            matrix[i, place] += c
            reach[mask | low] += c
    return matrix


def finish_probabilities(stacks: StackDistribution, cfg: ExactConfig | None = None) -> FinishMatrix:
    """Exact finish matrix via the configured engine.

    Raises :class:`ExactLimitError` above ``cfg.max_players_exact``; the
    caller should fall back to the Monte Carlo estimator there.
    """
    cfg = cfg or ExactConfig()
    n = stacks.player_count
    if n > cfg.max_players_exact:
        raise ExactLimitError(
            f"{n} players exceeds the exact bound of {cfg.max_players_exact}; use the Monte Carlo estimator"
        )
    if cfg.engine == "naive_enumeration":
        return finish_probabilities_naive(stacks)
    return FinishMatrix(_finish_matrix_subset_dp(np.array(stacks.fractions)))


def icm_equity(
    stacks: StackDistribution,
    payouts: PayoutLadder,
    cfg: ExactConfig | None = None,
) -> EquityVector:
    """Expected normalized prize per player: finish matrix times the ladder."""
    if payouts.place_count != stacks.player_count:
        raise ModelError(
            f"payout ladder has {payouts.place_count} places for {stacks.player_count} players; "
            "use normalize_payouts first"
        )
    matrix = finish_probabilities(stacks, cfg)
    equities = matrix.probabilities @ np.array(payouts.prizes)
    return EquityVector(tuple(float(e) for e in equities))
