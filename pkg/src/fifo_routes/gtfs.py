"""GTFS feed ingestion: one streaming pass over stop_times.txt.

Only trip_id, arrival_time, departure_time, stop_id and stop_sequence
are read; stops.txt (when present) contributes extra station ids and a
frequencies.txt is counted but never expanded into trips.  Trips with
broken rows are dropped whole and tallied per reason rather than
repaired: interpolating times would invent ordering facts the
overtaking relation is sensitive to.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path

from fifo_routes.model import StopEvent, Timetable, Trip, validate_trip

_TIME_RE = re.compile(r"^\s*(\d+):([0-5]\d):([0-5]\d)\s*$")

_REQUIRED_COLUMNS = (
    "trip_id",
    "arrival_time",
    "departure_time",
    "stop_id",
    "stop_sequence",
)


class IngestError(Exception):
    """The feed is unusable as a whole (missing file, bad header)."""


@dataclass
class IngestReport:
    trips_loaded: int = 0
    trips_dropped: int = 0
    drop_reasons: dict[str, int] = field(default_factory=dict)
    stations_seen: int = 0
    frequencies_rows: int = 0


def parse_gtfs_time(text: str) -> int:
    """Seconds since service-day start from (H)H:MM:SS.

    Hours are unbounded above (25:30:00 is a valid after-midnight
    time); minutes and seconds must be in [0, 59].
    """
    match = _TIME_RE.match(text)
    if not match:
        raise ValueError(f"not a GTFS time: {text!r}")
    hours, minutes, seconds = (int(g) for g in match.groups())
    return hours * 3600 + minutes * 60 + seconds


def _count_frequencies(directory: Path) -> int:
    path = directory / "frequencies.txt"
    if not path.is_file():
        return 0
    with path.open(encoding="utf-8-sig", newline="") as handle:
        rows = csv.reader(handle)
        next(rows, None)  # header
        return sum(1 for _ in rows)


def _extra_stations(directory: Path) -> set[str]:
    path = directory / "stops.txt"
    if not path.is_file():
        return set()
    stations = set()
    with path.open(encoding="utf-8-sig", newline="") as handle:
        rows = csv.reader(handle)
        header = next(rows, None)
        if not header or "stop_id" not in header:
            return set()
        idx = header.index("stop_id")
        for row in rows:
            if idx < len(row) and row[idx]:
                stations.add(row[idx])
    return stations


def load_gtfs(source: str | Path) -> tuple[Timetable, IngestReport]:
    """Load a GTFS directory into a timetable plus an ingest report.

    Events are ordered by the numeric stop_sequence column (gaps are
    legal and only define order).  A trip is dropped, with the reason
    counted, when any of its rows is malformed, a time is blank or
    unparseable, a stop_sequence repeats, or the assembled event chain
    is not chronological.
    """
    directory = Path(source)
    if not directory.is_dir():
        raise IngestError(f"not a readable directory: {directory}")
    stop_times = directory / "stop_times.txt"
    if not stop_times.is_file():
        raise IngestError(f"missing stop_times.txt in {directory}")

    # trip_id -> list of (stop_sequence, stop_id, arrival, departure)
    rows_by_trip: dict[str, list[tuple[int, str, int, int]]] = {}
    broken: dict[str, str] = {}
    seen_seq: dict[str, set[int]] = {}

    def drop(trip_id: str, reason: str):
        if trip_id not in broken:
            broken[trip_id] = reason

    with stop_times.open(encoding="utf-8-sig", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None:
            raise IngestError("stop_times.txt is empty")
        header = [name.strip() for name in header]
        try:
            col = {name: header.index(name) for name in _REQUIRED_COLUMNS}
        except ValueError as exc:
            raise IngestError(f"stop_times.txt header is missing a column: {exc}")
        n_cols = max(col.values()) + 1

        for row in reader:
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < n_cols:
                tid_idx = col["trip_id"]
                if tid_idx < len(row) and row[tid_idx]:
                    drop(row[tid_idx], "bad_row")
                continue
            trip_id = row[col["trip_id"]]
            if not trip_id:
                continue  # unattributable row
            if trip_id in broken:
                continue
            arrival_text = row[col["arrival_time"]].strip()
            departure_text = row[col["departure_time"]].strip()
            stop_id = row[col["stop_id"]]
            seq_text = row[col["stop_sequence"]].strip()
            if not stop_id:
                drop(trip_id, "bad_row")
                continue
            if not arrival_text or not departure_text:
                drop(trip_id, "missing_time")
                continue
            try:
                seq = int(seq_text)
            except ValueError:
                drop(trip_id, "bad_row")
                continue
            try:
                arrival = parse_gtfs_time(arrival_text)
                departure = parse_gtfs_time(departure_text)
            except ValueError:
                drop(trip_id, "bad_time")
                continue
            if seq in seen_seq.setdefault(trip_id, set()):
                drop(trip_id, "duplicate_stop_sequence")
                continue
            seen_seq[trip_id].add(seq)
            rows_by_trip.setdefault(trip_id, []).append(
                (seq, stop_id, arrival, departure)
            )

    report = IngestReport()
    trips = []
    for trip_id in rows_by_trip:
        if trip_id in broken:
            continue
        rows = sorted(rows_by_trip[trip_id])
        trip = Trip(
            id=trip_id,
            events=tuple(
                StopEvent(stop_id, arrival, departure)
                for _, stop_id, arrival, departure in rows
            ),
        )
        if validate_trip(trip):
            drop(trip_id, "time_order")
            continue
        trips.append(trip)
    for trip_id in broken:
        reason = broken[trip_id]
        report.drop_reasons[reason] = report.drop_reasons.get(reason, 0) + 1

    report.trips_loaded = len(trips)
    report.trips_dropped = len(broken)
    report.frequencies_rows = _count_frequencies(directory)

    timetable = Timetable.build(trips, stations=_extra_stations(directory))
    report.stations_seen = len(timetable.stations)
    return timetable, report
