"""Synthetic timetable generation for tests and benchmarks.

Each stop sequence gets trips departing at successive headways with
per-event jitter.  Without overtake injection consecutive trips are
clamped to never cross, so every group is a chain (the regime real
feeds are close to); with probability overtake_probability a trip is
instead perturbed to overtake its predecessor.  Deterministic for a
fixed seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from fifo_routes.model import StopEvent, Timetable, Trip

_FIRST_DEPARTURE = 5 * 3600
_LEG_SECONDS = 300
_DWELL_SECONDS = 60


@dataclass(frozen=True)
class GeneratorSpec:
    num_sequences: int
    trips_per_sequence: int
    stops_per_sequence: int
    headway_seconds: int = 600
    jitter_seconds: int = 0
    overtake_probability: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        if self.num_sequences < 1:
            raise ValueError("num_sequences must be >= 1")
        if self.trips_per_sequence < 1:
            raise ValueError("trips_per_sequence must be >= 1")
        if self.stops_per_sequence < 1:
            raise ValueError("stops_per_sequence must be >= 1")
        if self.headway_seconds < 0:
            raise ValueError("headway_seconds must be >= 0")
        if self.jitter_seconds < 0:
            raise ValueError("jitter_seconds must be >= 0")
        if not 0.0 <= self.overtake_probability <= 1.0:
            raise ValueError("overtake_probability must be within [0, 1]")


def _base_times(stops: int) -> list[int]:
    flat = []
    t = _FIRST_DEPARTURE
    for _ in range(stops):
        flat.append(t)  # arrival
        flat.append(t + _DWELL_SECONDS)  # departure
        t += _DWELL_SECONDS + _LEG_SECONDS
    return flat


def _overtake_variant(prev: list[int], rng: random.Random) -> list[int] | None:
    """Times that overtake `prev`: later before a pivot, earlier after.

    The pivot must sit in a gap of at least 2 seconds so both shifts
    can be strict; returns None when no such gap is left.
    """
    pivots = [idx for idx in range(1, len(prev)) if prev[idx] - prev[idx - 1] >= 2]
    if not pivots:
        return None
    pivot = rng.choice(pivots)
    shift = min((prev[pivot] - prev[pivot - 1]) // 2, 30)
    return [v + shift if idx < pivot else v - shift for idx, v in enumerate(prev)]


def _follower(prev: list[int], spec: GeneratorSpec, rng: random.Random) -> list[int]:
    """The next trip in a chain: previous times plus headway and jitter,
    clamped so it stays valid and never crosses its predecessor."""
    flat = []
    for idx, base in enumerate(prev):
        v = base + spec.headway_seconds
        if spec.jitter_seconds:
            v += rng.randint(-spec.jitter_seconds, spec.jitter_seconds)
        if idx:
            v = max(v, flat[idx - 1])
        flat.append(max(v, base))
    return flat


def generate_synthetic(spec: GeneratorSpec) -> Timetable:
    rng = random.Random(spec.rng_seed)
    seq_width = len(str(spec.num_sequences - 1)) if spec.num_sequences > 1 else 1
    trip_width = (
        len(str(spec.trips_per_sequence - 1)) if spec.trips_per_sequence > 1 else 1
    )
    trips = []
    for si in range(spec.num_sequences):
        stops = [f"S{si:0{seq_width}d}-{p}" for p in range(spec.stops_per_sequence)]
        flat = _base_times(spec.stops_per_sequence)
        for ti in range(spec.trips_per_sequence):
            if ti:
                variant = None
                if rng.random() < spec.overtake_probability:
                    variant = _overtake_variant(flat, rng)
                flat = variant if variant is not None else _follower(flat, spec, rng)
            events = tuple(
                StopEvent(stop, flat[2 * p], flat[2 * p + 1])
                for p, stop in enumerate(stops)
            )
            trips.append(Trip(id=f"t{si:0{seq_width}d}-{ti:0{trip_width}d}", events=events))
    return Timetable.build(trips)
