"""Tournament data ingestion: canonical NDJSON to validated snapshots.

Input is newline-delimited JSON, one event per line, with payout tables,
final results, and per-day chip counts.  The pipeline is load (malformed
lines become reject entries, never silent drops), dedupe (merge events that
share a normalized name and year), and snapshot building (join each day's
chip counts to final places, normalize the payout ladder over the players
still in, and emit one validated record per usable day).

Player and event names are matched by casefolded, whitespace-collapsed,
diacritic-stripped exact comparison.  Fuzzy matching is deliberately out:
every join must be auditable.
"""

from __future__ import annotations

import csv
import json
import unicodedata
from collections import defaultdict
from dataclasses import dataclass
from pathlib import Path

from .model import ModelError, SnapshotRecord, normalize_payouts


class IngestError(ModelError):
    """Raised for unreadable inputs or schema violations."""


@dataclass(frozen=True)
class Payout:
    place: int
    prize: float

    def __post_init__(self) -> None:
        if self.place < 1:
            raise IngestError(f"payout place must be >= 1, got {self.place}")
        if not self.prize >= 0.0:
            raise IngestError(f"prize must be non-negative, got {self.prize}")


@dataclass(frozen=True)
class Result:
    place: int
    player_key: str

    def __post_init__(self) -> None:
        if self.place < 1:
            raise IngestError(f"result place must be >= 1, got {self.place}")
        if not self.player_key:
            raise IngestError("result player_key must be non-empty")


@dataclass(frozen=True)
class DayCounts:
    day_label: str
    stacks: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        if not self.stacks:
            raise IngestError(f"day {self.day_label!r} has no stacks")
        for key, chips in self.stacks:
            if not key:
                raise IngestError(f"day {self.day_label!r} has an empty player_key")
            if chips < 1:
                raise IngestError(f"day {self.day_label!r}: chips must be positive, got {chips}")


@dataclass(frozen=True)
class RawEvent:
    event_id: str
    sources: frozenset[str]
    name: str
    year: int | None
    payouts: tuple[Payout, ...]
    results: tuple[Result, ...]
    days: tuple[DayCounts, ...]

    def __post_init__(self) -> None:
        if not self.event_id:
            raise IngestError("event_id must be non-empty")
        keys = [r.player_key for r in self.results]
        if len(keys) != len(set(keys)):
            raise IngestError(f"event {self.event_id}: duplicate player_key in results")


@dataclass(frozen=True)
class IngestReport:
    """Counts for one ingest run; events_deduped is the post-merge count."""

    events_in: int
    events_deduped: int
    snapshots_kept: int
    snapshots_dropped_1player: int
    snapshots_dropped_unmatched: int
    players_total: int

    def __post_init__(self) -> None:
        for field, value in vars(self).items():
            if value < 0:
                raise IngestError(f"{field} must be non-negative, got {value}")


def normalize_key(text: str) -> str:
    """Casefold, collapse whitespace, and strip diacritics for joining."""
    decomposed = unicodedata.normalize("NFKD", text)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return " ".join(stripped.casefold().split())


def _require(obj: dict, field: str) -> object:
    if field not in obj:
        raise IngestError(f"missing field {field!r}")
    return obj[field]


def _as_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise IngestError(f"{what} must be an integer, got {value!r}")
    return value


def _as_str(value: object, what: str) -> str:
    if not isinstance(value, str):
        raise IngestError(f"{what} must be a string, got {value!r}")
    return value


def parse_event(obj: object) -> RawEvent:
    """Build a RawEvent from one decoded NDJSON object.

    Stack entries with zero chips are dropped here: result listings often
    carry already-eliminated players at zero, and they are not part of the
    remaining field.
    """
    if not isinstance(obj, dict):
        raise IngestError(f"event must be a JSON object, got {type(obj).__name__}")
    event_id = _as_str(_require(obj, "event_id"), "event_id")
    sources_raw = _require(obj, "sources")
    if not isinstance(sources_raw, list):
        raise IngestError("sources must be a list of strings")
    sources = frozenset(_as_str(s, "source") for s in sources_raw)
    name = _as_str(_require(obj, "name"), "name")
    year_raw = obj.get("year")
    year = None if year_raw is None else _as_int(year_raw, "year")
    payouts = []
    for entry in _require(obj, "payouts"):
        if not isinstance(entry, dict):
            raise IngestError("payout entries must be objects")
        prize_raw = _require(entry, "prize")
        if isinstance(prize_raw, bool) or not isinstance(prize_raw, (int, float)):
            raise IngestError(f"prize must be a number, got {prize_raw!r}")
        payouts.append(Payout(_as_int(_require(entry, "place"), "place"), float(prize_raw)))
    results = []
    for entry in _require(obj, "results"):
        if not isinstance(entry, dict):
            raise IngestError("result entries must be objects")
        results.append(
            Result(
                _as_int(_require(entry, "place"), "place"),
                _as_str(_require(entry, "player_key"), "player_key"),
            )
        )
    days = []
    for entry in _require(obj, "days"):
        if not isinstance(entry, dict):
            raise IngestError("day entries must be objects")
        stacks = []
        for stack in _require(entry, "stacks"):
            if not isinstance(stack, dict):
                raise IngestError("stack entries must be objects")
            key = _as_str(_require(stack, "player_key"), "player_key")
            chips = _as_int(_require(stack, "chips"), "chips")
            if chips == 0:
                continue
            stacks.append((key, chips))
        if not stacks:
            # a day with nobody left in carries no snapshot
            continue
        days.append(DayCounts(_as_str(_require(entry, "day_label"), "day_label"), tuple(stacks)))
    return RawEvent(event_id, sources, name, year, tuple(payouts), tuple(results), tuple(days))


def load_events(path: str | Path) -> tuple[list[RawEvent], list[dict]]:
    """Read canonical NDJSON from a file or from every *.ndjson in a directory.

    Returns (events, rejects).  Each reject entry carries the source file,
    line number, a reason code, and a detail message.
    """
    root = Path(path)
    if not root.exists():
        raise IngestError(f"no such path: {root}")
    if root.is_dir():
        files = sorted(p for p in root.iterdir() if p.suffix in {".ndjson", ".jsonl"})
        if not files:
            raise IngestError(f"no .ndjson or .jsonl files in {root}")
    else:
        files = [root]
    events: list[RawEvent] = []
    rejects: list[dict] = []
    for file in files:
        with open(file, encoding="utf-8") as handle:
            for lineno, line in enumerate(handle, start=1):
                line = line.strip()
                if not line:
                    continue
                where = {"file": str(file), "line": lineno}
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    rejects.append({**where, "reason": "invalid-json", "detail": str(exc)})
                    continue
                try:
                    events.append(parse_event(obj))
                except IngestError as exc:
                    rejects.append({**where, "reason": "invalid-event", "detail": str(exc)})
    return events, rejects


def _day_weight(event: RawEvent) -> tuple[int, int]:
    return len(event.days), sum(len(d.stacks) for d in event.days)


def _results_key(event: RawEvent) -> frozenset[tuple[int, str]]:
    return frozenset((r.place, normalize_key(r.player_key)) for r in event.results)


def dedupe_events(events: list[RawEvent], rejects: list[dict] | None = None) -> list[RawEvent]:
    """Merge events sharing (normalized name, year).

    Sources are unioned; payouts, results, and days are each taken from the
    group member with the most complete version of that field.  Groups whose
    members carry conflicting non-empty results are excluded entirely and
    reported into ``rejects`` when given.
    """
    groups: dict[tuple[str, int | None], list[RawEvent]] = defaultdict(list)
    order: list[tuple[str, int | None]] = []
    for event in events:
        key = (normalize_key(event.name), event.year)
        if key not in groups:
            order.append(key)
        groups[key].append(event)
    merged: list[RawEvent] = []
    for key in order:
        group = groups[key]
        if len(group) == 1:
            merged.append(group[0])
            continue
        nonempty_results = {_results_key(e) for e in group if e.results}
        if len(nonempty_results) > 1:
            if rejects is not None:
                rejects.append(
                    {
                        "reason": "conflicting-results",
                        "detail": f"events {sorted(e.event_id for e in group)} disagree on final results",
                    }
                )
            continue
        first = group[0]
        merged.append(
            RawEvent(
                event_id=first.event_id,
                sources=frozenset().union(*(e.sources for e in group)),
                name=first.name,
                year=first.year,
                payouts=max((e.payouts for e in group), key=len),
                results=max((e.results for e in group), key=len),
                days=max((e.days for e in group), key=lambda d: (len(d), sum(len(x.stacks) for x in d))),
            )
        )
    return merged


def build_snapshots(
    events: list[RawEvent],
    events_in: int | None = None,
) -> tuple[list[SnapshotRecord], IngestReport]:
    """Join day chip counts with final results into validated snapshots.

    Expects already-deduplicated events.  ``events_in`` is the pre-dedupe
    event count for the report; it defaults to the number given here.  Days
    with a single player are dropped as uninformative; days with a missing
    payout table, missing results, any player not matched to a final place,
    or places that are not exactly 1..n are dropped as unmatched.
    """
    snapshots: list[SnapshotRecord] = []
    kept = dropped_1p = dropped_unmatched = players_total = 0
    for event in events:
        places = _places_by_key(event)
        prizes_by_place = _prizes_in_place_order(event)
        for day in event.days:
            n = len(day.stacks)
            if n == 1:
                dropped_1p += 1
                continue
            if places is None or not prizes_by_place:
                dropped_unmatched += 1
                continue
            day_places = [places.get(normalize_key(key)) for key, _ in day.stacks]
            if None in day_places or sorted(day_places) != list(range(1, n + 1)):
                dropped_unmatched += 1
                continue
            ladder = normalize_payouts(prizes_by_place, n)
            targets = tuple(ladder.prizes[place - 1] for place in day_places)
            snapshots.append(
                SnapshotRecord(
                    event_id=event.event_id,
                    day_label=day.day_label,
                    players=day.stacks,
                    targets=targets,
                )
            )
            kept += 1
            players_total += n
    snapshots.sort(key=lambda s: (s.event_id, s.day_label))
    report = IngestReport(
        events_in=len(events) if events_in is None else events_in,
        events_deduped=len(events),
        snapshots_kept=kept,
        snapshots_dropped_1player=dropped_1p,
        snapshots_dropped_unmatched=dropped_unmatched,
        players_total=players_total,
    )
    return snapshots, report


def _places_by_key(event: RawEvent) -> dict[str, int | None] | None:
    if not event.results:
        return None
    places: dict[str, int | None] = {}
    for result in event.results:
        key = normalize_key(result.player_key)
        # two distinct raw names collapsing to one key: ambiguous, match nothing
        places[key] = None if key in places else result.place
    return places


def _prizes_in_place_order(event: RawEvent) -> list[float]:
    if not event.payouts:
        return []
    top = max(p.place for p in event.payouts)
    prizes = [0.0] * top
    for payout in event.payouts:
        prizes[payout.place - 1] = payout.prize
    return prizes


def run_ingest(path: str | Path) -> tuple[list[SnapshotRecord], IngestReport, list[dict]]:
    """Full pipeline: load, dedupe, build.  Returns (snapshots, report, rejects)."""
    events, rejects = load_events(path)
    deduped = dedupe_events(events, rejects)
    snapshots, report = build_snapshots(deduped, events_in=len(events))
    return snapshots, report, rejects


def export_snapshots_csv(snapshots: list[SnapshotRecord], path: str | Path) -> None:
    """Write one row per player: event_id, day_label, player_key, chips, target."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["event_id", "day_label", "player_key", "chips", "target"])
        for snap in snapshots:
            for (key, chips), target in zip(snap.players, snap.targets):
                writer.writerow([snap.event_id, snap.day_label, key, chips, repr(target)])


def write_rejects_json(rejects: list[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(rejects, handle, indent=2)
        handle.write("\n")
