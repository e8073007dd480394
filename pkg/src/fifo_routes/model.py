"""In-memory timetable model: stops, events, trips, routes.

Times are integer seconds since the start of the service day and may
exceed 86400 (GTFS convention for trips running past midnight).  All
types are immutable after construction and all functions are pure, so
everything here is safe to share between threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

# Opaque station identifier and a point in time (seconds since the
# service-day start).  Plain builtins; the aliases are documentation.
StopId = str
TimePoint = int

# An exact, positional stop sequence.  Repeated stops (loops) are legal
# and compared positionally.
StopSequence = tuple[StopId, ...]


class Comparison(enum.Enum):
    """Outcome of comparing two trips with the same-or-different shape."""

    LESS = "less"  # a strictly earlier than b at some index, never later
    GREATER = "greater"
    EQUAL = "equal"  # identical times at every index
    INCOMPARABLE = "incomparable"  # the trips overtake each other
    DIFFERENT_SHAPE = "different_shape"  # stop sequences differ

    def mirror(self) -> "Comparison":
        if self is Comparison.LESS:
            return Comparison.GREATER
        if self is Comparison.GREATER:
            return Comparison.LESS
        return self


@dataclass(frozen=True, slots=True)
class StopEvent:
    """Arrival/departure instant pair at one stop of one trip."""

    stop: StopId
    arrival: TimePoint
    departure: TimePoint

    def __post_init__(self):
        if not self.stop:
            raise ValueError("stop id must be non-empty")
        if self.arrival < 0:
            raise ValueError(f"negative arrival time {self.arrival}")
        if self.departure < 0:
            raise ValueError(f"negative departure time {self.departure}")


@dataclass(frozen=True, slots=True)
class Trip:
    """One vehicle's scheduled run: a chronological event sequence.

    The constructor does not reject out-of-order times; use
    :func:`validate_trip` to obtain the violations as data.
    """

    id: str
    events: tuple[StopEvent, ...]

    def __post_init__(self):
        if not self.id:
            raise ValueError("trip id must be non-empty")
        if len(self.events) < 1:
            raise ValueError(f"trip {self.id!r} has no events")
        if not isinstance(self.events, tuple):
            object.__setattr__(self, "events", tuple(self.events))

    def flat_times(self) -> list[int]:
        """Times flattened as [arr0, dep0, arr1, dep1, ...]."""
        out = []
        for ev in self.events:
            out.append(ev.arrival)
            out.append(ev.departure)
        return out


@dataclass(frozen=True, slots=True)
class Route:
    """An ordered chain of trip ids sharing one stop sequence.

    Adjacent trips satisfy the earlier-than relation, which by
    transitivity orders the whole chain.
    """

    id: str
    trips: tuple[str, ...]

    def __post_init__(self):
        if not self.trips:
            raise ValueError(f"route {self.id!r} is empty")


@dataclass(frozen=True, slots=True)
class Timetable:
    """A set of trips plus the stations they touch.

    Construction normalises order (trips by id, stations
    lexicographically), so two timetables with the same content compare
    equal and serialise identically regardless of input order.
    """

    trips: tuple[Trip, ...]
    stations: tuple[StopId, ...]
    _by_id: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        trips = tuple(sorted(self.trips, key=lambda t: t.id))
        by_id = {}
        for trip in trips:
            if trip.id in by_id:
                raise ValueError(f"duplicate trip id {trip.id!r}")
            by_id[trip.id] = trip
        referenced = {ev.stop for trip in trips for ev in trip.events}
        stations = set(self.stations) | referenced
        object.__setattr__(self, "trips", trips)
        object.__setattr__(self, "stations", tuple(sorted(stations)))
        object.__setattr__(self, "_by_id", by_id)

    @classmethod
    def build(cls, trips, stations=()) -> "Timetable":
        return cls(tuple(trips), tuple(stations))

    def trip(self, trip_id: str) -> Trip:
        return self._by_id[trip_id]

    def __contains__(self, trip_id: str) -> bool:
        return trip_id in self._by_id

    def __len__(self) -> int:
        return len(self.trips)


def validate_trip(trip: Trip) -> list[str]:
    """Check the chronological-event invariants of a single trip.

    Returns one human-readable description per violated inequality,
    naming the event index; an empty list means the trip is valid.
    Violations are data, not failures.  Single-event trips only need
    arrival <= departure.
    """
    violations = []
    for i, ev in enumerate(trip.events):
        if ev.arrival > ev.departure:
            violations.append(
                f"event {i}: arrival ({ev.arrival}) is after departure ({ev.departure})"
            )
        if i > 0:
            prev = trip.events[i - 1]
            if prev.departure > ev.arrival:
                violations.append(
                    f"event {i}: departure of event {i - 1} ({prev.departure})"
                    f" is after arrival ({ev.arrival})"
                )
    return violations


def stop_sequence_of(trip: Trip) -> StopSequence:
    """Project a trip's events onto their stops, order preserved."""
    return tuple(ev.stop for ev in trip.events)


def compare_trips(a: Trip, b: Trip) -> Comparison:
    """Classify the ordered pair (a, b) under the earlier-than relation.

    Two trips are comparable only when their stop sequences are
    positionally identical.  a is LESS when its arrival and departure
    are no later than b's at every index, with at least one strictly
    earlier; EQUAL when all times coincide; INCOMPARABLE when the trips
    overtake each other.
    """
    if stop_sequence_of(a) != stop_sequence_of(b):
        return Comparison.DIFFERENT_SHAPE
    a_le_b = True
    b_le_a = True
    for ea, eb in zip(a.events, b.events):
        if ea.arrival < eb.arrival or ea.departure < eb.departure:
            b_le_a = False
        if ea.arrival > eb.arrival or ea.departure > eb.departure:
            a_le_b = False
        if not (a_le_b or b_le_a):
            return Comparison.INCOMPARABLE
    if a_le_b and b_le_a:
        return Comparison.EQUAL
    return Comparison.LESS if a_le_b else Comparison.GREATER
