"""Rank-order payout assignment, the naive comparison point.

Each player is locked to exactly one prize: the biggest stack gets the top
prize, the second biggest the next one, and so on.  Ties in chip counts are
broken by input position, so the function is deterministic.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .model import EquityVector, ModelError, PayoutLadder


def baseline_equity(chips: Sequence[int], payouts: PayoutLadder) -> EquityVector:
    """Assign each player the prize at their chip rank.

    The output is always a permutation of the ladder.  Equal chip counts
    rank in input order (stable sort).
    """
    n = len(chips)
    if payouts.place_count != n:
        raise ModelError(
            f"payout ladder has {payouts.place_count} places for {n} players; use normalize_payouts first"
        )
    if n == 0:
        raise ModelError("chips must be non-empty")
    # stable sort on negated chips: descending, ties keep input order
    order = np.argsort(-np.asarray(chips, dtype=np.float64), kind="stable")
    equities = [0.0] * n
    for place, player in enumerate(order):
        equities[int(player)] = payouts.prizes[place]
    return EquityVector(tuple(equities))
