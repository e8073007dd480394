"""On-disk formats: canonical timetable JSON and route assignments.

The canonical timetable file decouples ingestion from solving so real
feeds and synthetic inputs share one solver path.  Assignments are
written either as JSON (routes, summary and, for the optimal solver,
the antichain certificate) or as a two-column CSV.  All writers are
deterministic: identical inputs yield byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from fifo_routes.model import Route, StopEvent, Timetable, Trip, stop_sequence_of
from fifo_routes.solvers import AntichainCertificate, RoutePartition

TIMETABLE_VERSION = "fifo-routes/1"
CSV_HEADER = "trip_id,route_id"


class FileFormatError(Exception):
    """A document does not match the expected schema."""


def timetable_to_dict(timetable: Timetable) -> dict:
    return {
        "version": TIMETABLE_VERSION,
        "stations": list(timetable.stations),
        "trips": [
            {
                "id": trip.id,
                "events": [
                    {
                        "stop": ev.stop,
                        "arrival_seconds": ev.arrival,
                        "departure_seconds": ev.departure,
                    }
                    for ev in trip.events
                ],
            }
            for trip in timetable.trips
        ],
    }


def timetable_from_dict(data: dict) -> Timetable:
    try:
        version = data["version"]
        if version != TIMETABLE_VERSION:
            raise FileFormatError(f"unsupported timetable version {version!r}")
        trips = [
            Trip(
                id=entry["id"],
                events=tuple(
                    StopEvent(
                        ev["stop"],
                        int(ev["arrival_seconds"]),
                        int(ev["departure_seconds"]),
                    )
                    for ev in entry["events"]
                ),
            )
            for entry in data["trips"]
        ]
        stations = data.get("stations", [])
    except FileFormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed timetable document: {exc!r}")
    return Timetable.build(trips, stations=stations)


def _dump_json(document: dict, path: Path):
    text = json.dumps(document, indent=2, ensure_ascii=False) + "\n"
    path.write_text(text, encoding="utf-8")


def _read_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: expected a JSON object at top level")
    return data


def save_timetable(timetable: Timetable, path: str | Path):
    _dump_json(timetable_to_dict(timetable), Path(path))


def load_timetable(path: str | Path) -> Timetable:
    return timetable_from_dict(_read_json(Path(path)))


def _counts_block(partition: RoutePartition) -> list[dict]:
    return [
        {"stop_sequence": list(seq), "routes": partition.per_group_counts[seq]}
        for seq in sorted(partition.per_group_counts)
    ]


def assignment_to_dict(
    partition: RoutePartition,
    timetable: Timetable,
    certificate: AntichainCertificate | None = None,
) -> dict:
    document = {
        "version": TIMETABLE_VERSION,
        "summary": {
            "algorithm": partition.algorithm,
            "total_routes": partition.total_routes,
            "total_trips": partition.total_trips,
            "per_group_counts": _counts_block(partition),
        },
        "routes": [
            {
                "route_id": route.id,
                "stop_sequence": list(
                    stop_sequence_of(timetable.trip(route.trips[0]))
                ),
                "trip_ids": list(route.trips),
            }
            for route in partition.routes
        ],
    }
    if certificate is not None:
        document["certificate"] = [
            {
                "stop_sequence": list(seq),
                "trip_ids": list(certificate.per_group[seq]),
            }
            for seq in sorted(certificate.per_group)
        ]
    return document


def assignment_from_dict(data: dict) -> tuple[RoutePartition, AntichainCertificate | None]:
    try:
        summary = data["summary"]
        routes = tuple(
            Route(id=entry["route_id"], trips=tuple(entry["trip_ids"]))
            for entry in data["routes"]
        )
        counts = {
            tuple(entry["stop_sequence"]): int(entry["routes"])
            for entry in summary["per_group_counts"]
        }
        partition = RoutePartition(
            routes=routes,
            algorithm=str(summary["algorithm"]),
            per_group_counts=counts,
        )
        certificate = None
        if "certificate" in data:
            certificate = AntichainCertificate(
                per_group={
                    tuple(entry["stop_sequence"]): tuple(entry["trip_ids"])
                    for entry in data["certificate"]
                }
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed assignment document: {exc!r}")
    return partition, certificate


def _partition_to_csv(partition: RoutePartition) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for route in partition.routes:
        for trip_id in route.trips:
            writer.writerow([trip_id, route.id])
    return buffer.getvalue()


def save_assignment(
    partition: RoutePartition,
    timetable: Timetable,
    path: str | Path,
    fmt: str = "json",
    certificate: AntichainCertificate | None = None,
):
    path = Path(path)
    if fmt == "json":
        _dump_json(assignment_to_dict(partition, timetable, certificate), path)
    elif fmt == "csv":
        path.write_text(_partition_to_csv(partition), encoding="utf-8")
    else:
        raise ValueError(f"unknown assignment format {fmt!r}")


def _assignment_from_csv(text: str, timetable: Timetable) -> RoutePartition:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != CSV_HEADER.split(","):
        raise FileFormatError(f"assignment CSV must start with {CSV_HEADER!r}")
    members: dict[str, list[str]] = {}
    for row in reader:
        if not row:
            continue
        if len(row) != 2:
            raise FileFormatError(f"bad assignment row: {row!r}")
        trip_id, route_id = row
        members.setdefault(route_id, []).append(trip_id)
    routes = tuple(
        Route(id=route_id, trips=tuple(trips)) for route_id, trips in members.items()
    )
    counts: dict[tuple, int] = {}
    for route in routes:
        if route.trips[0] not in timetable:
            continue  # verification will surface the unknown id
        seq = stop_sequence_of(timetable.trip(route.trips[0]))
        counts[seq] = counts.get(seq, 0) + 1
    return RoutePartition(routes=routes, algorithm="unknown", per_group_counts=counts)


def load_assignment(
    path: str | Path, timetable: Timetable
) -> tuple[RoutePartition, AntichainCertificate | None]:
    """Read an assignment file, JSON or CSV, sniffed from content."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return assignment_from_dict(_read_json(path))
    return _assignment_from_csv(text, timetable), None
