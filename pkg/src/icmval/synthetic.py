"""Synthetic tournament generator with chip-proportional ground truth.

Finish orders are drawn from the same sequential chip-share model the
library estimates, so on this data the exact equity is the true conditional
expectation of every target.  That gives the validation pipeline a known
answer: model error must undercut rank-order error, and residual means must
sit at zero up to sampling noise.  Used as the fallback corpus when no real
dataset is on hand, and usable from the CLI like any canonical NDJSON file.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .ingest import DayCounts, Payout, RawEvent, Result, build_snapshots
from .model import ModelError, SnapshotRecord

_TOTAL_CHIPS = 1_000_000
_POOL_PER_PLAYER = 10_000.0


def generate_events(
    n_events: int,
    seed: int,
    min_players: int = 2,
    max_players: int = 10,
) -> list[RawEvent]:
    """Draw ``n_events`` single-day events with sampled finish orders."""
    if n_events < 1:
        raise ModelError(f"n_events must be >= 1, got {n_events}")
    if not 2 <= min_players <= max_players:
        raise ModelError(f"need 2 <= min_players <= max_players, got {min_players}, {max_players}")
    rng = np.random.default_rng(seed)
    events = []
    for index in range(n_events):
        n = int(rng.integers(min_players, max_players + 1))
        weights = rng.standard_exponential(n)
        chips = np.maximum(1, np.rint(weights / weights.sum() * _TOTAL_CHIPS)).astype(int)
        # finish order by exponential race: arrival rate = chip fraction
        race = rng.standard_exponential(n) / (chips / chips.sum())
        finish = np.argsort(race, kind="stable")
        players = [f"player {index:04d}-{i:02d}" for i in range(n)]
        paid_places = max(1, round(0.4 * n))
        shares = 0.5 ** np.arange(paid_places)
        pool = _POOL_PER_PLAYER * n
        prizes = pool * shares / shares.sum()
        events.append(
            RawEvent(
                event_id=f"syn-{index:04d}",
                sources=frozenset({"synthetic"}),
                name=f"synthetic event {index:04d}",
                year=2024,
                payouts=tuple(
                    Payout(place, round(float(prize), 2))
                    for place, prize in enumerate(prizes, start=1)
                ),
                results=tuple(
                    Result(place, players[int(i)])
                    for place, i in enumerate(finish, start=1)
                ),
                days=(
                    DayCounts(
                        "day 1",
                        tuple((players[i], int(chips[i])) for i in range(n)),
                    ),
                ),
            )
        )
    return events


def generate_snapshots(
    n_snapshots: int,
    seed: int,
    min_players: int = 2,
    max_players: int = 10,
) -> list[SnapshotRecord]:
    """One validated snapshot per generated event."""
    events = generate_events(n_snapshots, seed, min_players, max_players)
    snapshots, report = build_snapshots(events)
    if report.snapshots_kept != n_snapshots:
        raise ModelError(
            f"generator produced {report.snapshots_kept} usable snapshots out of {n_snapshots}"
        )
    return snapshots


def event_to_json(event: RawEvent) -> str:
    """Serialize one event to its canonical NDJSON line."""
    return json.dumps(
        {
            "event_id": event.event_id,
            "sources": sorted(event.sources),
            "name": event.name,
            "year": event.year,
            "payouts": [{"place": p.place, "prize": p.prize} for p in event.payouts],
            "results": [{"place": r.place, "player_key": r.player_key} for r in event.results],
            "days": [
                {
                    "day_label": d.day_label,
                    "stacks": [{"player_key": k, "chips": c} for k, c in d.stacks],
                }
                for d in event.days
            ],
        },
        ensure_ascii=False,
    )


def write_events_ndjson(events: list[RawEvent], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for event in events:
            handle.write(event_to_json(event))
            handle.write("\n")
