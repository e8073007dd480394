"""Shared builders for randomised solver and oracle tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from fifo_routes.model import StopEvent, Timetable, Trip
from fifo_routes.ordering import group_by_stop_sequence


def make_trip(trip_id: str, flat_times, stops=None) -> Trip:
    """Trip from flattened [arr0, dep0, arr1, dep1, ...] times."""
    k = len(flat_times) // 2
    if stops is None:
        stops = [f"s{i}" for i in range(k)]
    events = tuple(
        StopEvent(stops[i], flat_times[2 * i], flat_times[2 * i + 1])
        for i in range(k)
    )
    return Trip(id=trip_id, events=events)


def random_flat(rng: random.Random, stops: int, start_max=40, step_max=6):
    flat = [rng.randint(0, start_max)]
    for _ in range(2 * stops - 1):
        flat.append(flat[-1] + rng.randint(0, step_max))
    return flat


def random_group_timetable(
    rng: random.Random,
    size: int,
    stops: int,
    chaos: float,
    tie_prob: float = 0.0,
) -> Timetable:
    """One group of `size` same-shape trips with tunable structure.

    chaos=0 keeps trips chain-like (each one at-or-after the previous),
    chaos=1 draws each trip independently, which produces plenty of
    overtaking.  With tie_prob a trip copies an earlier trip's times,
    half the time re-jittering only the departures (the canonical-order
    stress case: equal first departure and arrivals, differing
    departures).
    """
    rows: list[list[int]] = []
    for t in range(size):
        if rows and rng.random() < tie_prob:
            flat = list(rng.choice(rows))
            if rng.random() < 0.5:
                for i in range(stops):
                    low = flat[2 * i]
                    high = flat[2 * i + 2] if i + 1 < stops else flat[2 * i + 1] + 5
                    flat[2 * i + 1] = rng.randint(low, high)
        elif not rows or rng.random() < chaos:
            flat = random_flat(rng, stops)
        else:
            prev = rows[-1]
            flat = []
            for c, base in enumerate(prev):
                v = base + rng.randint(0, 8)
                if c:
                    v = max(v, flat[c - 1])
                flat.append(v)
        rows.append(flat)
    trips = [make_trip(f"x{t:03d}", flat) for t, flat in enumerate(rows)]
    return Timetable.build(trips)


def only_group(timetable: Timetable):
    index = group_by_stop_sequence(timetable)
    (group,) = list(index)
    return group


@st.composite
def same_shape_trips(draw, min_trips=2, max_trips=6, max_stops=4):
    """A list of valid trips sharing one stop sequence, ties included."""
    k = draw(st.integers(1, max_stops))
    n = draw(st.integers(min_trips, max_trips))
    rows = []
    trips = []
    for t in range(n):
        tie = rows and draw(st.integers(0, 3)) == 0
        if tie:
            flat = list(draw(st.sampled_from(rows)))
        else:
            start = draw(st.integers(0, 30))
            steps = draw(
                st.lists(st.integers(0, 5), min_size=2 * k - 1, max_size=2 * k - 1)
            )
            flat = [start]
            for step in steps:
                flat.append(flat[-1] + step)
        rows.append(flat)
        trips.append(make_trip(f"h{t:02d}", flat))
    return trips
