"""Core domain types shared by the equity engines and the validation pipeline.

All types are immutable after construction and validate their invariants in
``__post_init__``; code downstream never sees an invalid instance.  Chip
counts stay integers (that is what tournaments report), all probability math
is double precision.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

#: Absolute tolerance for "sums to one" style invariants.
SUM_TOL = 1e-9


class ModelError(ValueError):
    """Raised when a domain object or operation input violates its contract."""


class PayoutOrderWarning(UserWarning):
    """A payout ladder pays a lower place more than a higher one.

    Real payout tables occasionally contain data-entry quirks and the equity
    math does not require monotonicity, so this is a warning, not an error.
    """


def _as_float_tuple(values: Sequence[float], what: str) -> tuple[float, ...]:
    try:
        out = tuple(float(v) for v in values)
    except (TypeError, ValueError) as exc:
        raise ModelError(f"{what} must be a sequence of numbers") from exc
    for v in out:
        if not math.isfinite(v):
            raise ModelError(f"{what} must be finite, got {v}")
    return out


@dataclass(frozen=True)
class StackDistribution:
    """Normalized chip shares of the remaining players.

    Invariants: every fraction is in (0, 1] (zero-chip players are eliminated
    and must not appear) and the fractions sum to one within ``SUM_TOL``.
    """

    fractions: tuple[float, ...]

    def __post_init__(self) -> None:
        fractions = _as_float_tuple(self.fractions, "stack fractions")
        object.__setattr__(self, "fractions", fractions)
        if not fractions:
            raise ModelError("a stack distribution needs at least one player")
        for f in fractions:
            if not 0.0 < f <= 1.0:
                raise ModelError(f"stack fraction {f} outside (0, 1]")
        total = math.fsum(fractions)
        if abs(total - 1.0) > SUM_TOL:
            raise ModelError(f"stack fractions sum to {total}, expected 1")

    @property
    def player_count(self) -> int:
        return len(self.fractions)


@dataclass(frozen=True)
class PayoutLadder:
    """Prize amounts by finishing place (index 0 = first place).

    When ``normalized`` is set the prizes must sum to one within ``SUM_TOL``.
    Non-increasing order is checked but violations only warn, see
    :class:`PayoutOrderWarning`.
    """

    prizes: tuple[float, ...]
    normalized: bool = False

    def __post_init__(self) -> None:
        prizes = _as_float_tuple(self.prizes, "prizes")
        object.__setattr__(self, "prizes", prizes)
        if not prizes:
            raise ModelError("a payout ladder needs at least one place")
        for p in prizes:
            if p < 0.0:
                raise ModelError(f"prize {p} is negative")
        for place in range(1, len(prizes)):
            if prizes[place] > prizes[place - 1] + 1e-12:
                warnings.warn(
                    f"payout ladder is not non-increasing: place {place + 1} pays "
                    f"{prizes[place]} > place {place} at {prizes[place - 1]}",
                    PayoutOrderWarning,
                    stacklevel=2,
                )
                break
        if self.normalized:
            total = math.fsum(prizes)
            if abs(total - 1.0) > SUM_TOL:
                raise ModelError(f"normalized ladder sums to {total}, expected 1")

    @property
    def place_count(self) -> int:
        return len(self.prizes)


@dataclass(frozen=True, eq=False)
class FinishMatrix:
    """Per-player, per-place finishing probabilities.

    Entry ``(i, j)`` is the probability that player ``i`` finishes in place
    ``j + 1``.  Rows sum to one (every player finishes somewhere) and columns
    sum to one (every place is filled by exactly one player).  The stored
    array is read-only.
    """

    probabilities: np.ndarray

    def __post_init__(self) -> None:
        p = np.array(self.probabilities, dtype=float)
        if p.ndim != 2 or p.shape[0] != p.shape[1] or p.shape[0] < 1:
            raise ModelError(f"finish matrix must be square and non-empty, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ModelError("finish matrix contains non-finite entries")
        # 1e-12 slack: entries are produced by float products of probabilities
        if p.min() < -1e-12 or p.max() > 1.0 + 1e-12:
            raise ModelError("finish matrix entries outside [0, 1]")
        row = p.sum(axis=1)
        col = p.sum(axis=0)
        if np.abs(row - 1.0).max() > SUM_TOL:
            raise ModelError(f"finish matrix rows do not sum to 1 (max error {np.abs(row - 1.0).max():.3e})")
        if np.abs(col - 1.0).max() > SUM_TOL:
            raise ModelError(f"finish matrix columns do not sum to 1 (max error {np.abs(col - 1.0).max():.3e})")
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    @property
    def player_count(self) -> int:
        return self.probabilities.shape[0]


@dataclass(frozen=True)
class EquityVector:
    """Expected normalized prize per player.

    ``standard_errors`` is present only for Monte Carlo output.
    """

    equities: tuple[float, ...]
    standard_errors: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        equities = _as_float_tuple(self.equities, "equities")
        object.__setattr__(self, "equities", equities)
        if not equities:
            raise ModelError("an equity vector needs at least one player")
        for e in equities:
            if e < 0.0:
                raise ModelError(f"equity {e} is negative")
        if self.standard_errors is not None:
            ses = tuple(float(s) for s in self.standard_errors)
            object.__setattr__(self, "standard_errors", ses)
            if len(ses) != len(equities):
                raise ModelError("standard errors do not align with equities")
            for s in ses:
                if math.isnan(s) or s < 0.0:
                    raise ModelError(f"standard error {s} is not a non-negative real")

    @property
    def player_count(self) -> int:
        return len(self.equities)


@dataclass(frozen=True)
class SnapshotRecord:
    """One end-of-day chip-count snapshot joined with the final results.

    ``players`` holds ``(player_key, chips)`` pairs; ``targets`` is the actual
    normalized prize each of those players went on to win, aligned with
    ``players``.  One-player snapshots carry no information and are rejected.
    """

    event_id: str
    day_label: str
    players: tuple[tuple[str, int], ...]
    targets: tuple[float, ...]

    def __post_init__(self) -> None:
        players = tuple((str(k), int(c)) for k, c in self.players)
        object.__setattr__(self, "players", players)
        targets = _as_float_tuple(self.targets, "targets")
        object.__setattr__(self, "targets", targets)
        if len(players) < 2:
            raise ModelError("a snapshot needs at least two players")
        if len(targets) != len(players):
            raise ModelError("targets do not align with players")
        for key, chips in players:
            if not key:
                raise ModelError("empty player key")
            if chips <= 0:
                raise ModelError(f"player {key!r} has non-positive chips {chips}")
        for t in targets:
            if t < 0.0:
                raise ModelError(f"target {t} is negative")
        total = math.fsum(targets)
        if abs(total - 1.0) > SUM_TOL:
            raise ModelError(f"targets sum to {total}, expected 1")

    @property
    def player_count(self) -> int:
        return len(self.players)

    @property
    def chips(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.players)

    @property
    def player_keys(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.players)

    def payout_ladder(self) -> PayoutLadder:
        """The normalized payout ladder implied by this snapshot.

        The remaining players occupy the top ``n`` places, so the targets are
        a permutation of the ladder; sorting them descending recovers it.
        """
        return PayoutLadder(tuple(sorted(self.targets, reverse=True)), normalized=True)


def normalize_stacks(chips: Sequence[int]) -> StackDistribution:
    """Turn raw chip counts into a :class:`StackDistribution`.

    Scale-invariant: multiplying every count by the same positive integer
    yields identical fractions within 1e-12.
    """
    counts = list(chips)
    if not counts:
        raise ModelError("no chip counts given")
    for c in counts:
        if int(c) != c:
            raise ModelError(f"chip count {c!r} is not an integer")
        if c <= 0:
            raise ModelError(f"chip count {c} is not positive")
    total = sum(int(c) for c in counts)
    return StackDistribution(tuple(int(c) / total for c in counts))


def normalize_payouts(prizes: Sequence[float], n_players: int) -> PayoutLadder:
    """Normalize the prizes relevant to ``n_players`` remaining players.

    Takes the first ``n_players`` prizes (padding with zeros when fewer places
    are paid than players remain) and divides by their sum, so the returned
    ladder has exactly ``n_players`` entries summing to one.
    """
    if n_players < 1:
        raise ModelError(f"n_players must be >= 1, got {n_players}")
    raw = _as_float_tuple(prizes, "prizes")
    if not raw:
        raise ModelError("no prizes given")
    for p in raw:
        if p < 0.0:
            raise ModelError(f"prize {p} is negative")
    relevant = list(raw[:n_players]) + [0.0] * max(0, n_players - len(raw))
    total = math.fsum(relevant)
    if total <= 0.0:
        raise ModelError("the prizes relevant to the remaining players sum to zero")
    return PayoutLadder(tuple(p / total for p in relevant), normalized=True)
