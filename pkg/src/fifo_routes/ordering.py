"""Grouping by stop sequence and the tie-broken precedence relation.

Trips sharing one exact stop sequence form a group; within a group the
earlier-than relation, with full-time ties broken by canonical member
order, is a strict partial order.  Every comparable pair gets exactly
one direction, which is what makes the chain-partition solvers work.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from fifo_routes import kernels
from fifo_routes.model import (
    Comparison,
    StopSequence,
    Timetable,
    Trip,
    compare_trips,
    stop_sequence_of,
)

# Above this size the dense pairwise relation (Theta(n^2) bytes) is not
# materialised; comparisons run on demand instead.
DENSE_GROUP_LIMIT = 4096


def canonical_key(trip: Trip):
    """Sort key fixing member order inside a group: first-stop
    departure, then the arrival-times tuple, then the trip id."""
    return (
        trip.events[0].departure,
        tuple(ev.arrival for ev in trip.events),
        trip.id,
    )


@dataclass(frozen=True, slots=True)
class TripGroup:
    """All trips sharing one stop sequence, members in canonical order."""

    sequence: StopSequence
    members: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True, slots=True)
class GroupIndex:
    """Disjoint trip groups covering a timetable, keyed by sequence."""

    groups: dict[StopSequence, TripGroup]

    def __iter__(self):
        # canonical order: sorted by stop sequence
        for seq in sorted(self.groups):
            yield self.groups[seq]

    def __len__(self) -> int:
        return len(self.groups)

    def __getitem__(self, sequence: StopSequence) -> TripGroup:
        return self.groups[sequence]


def group_by_stop_sequence(timetable: Timetable) -> GroupIndex:
    """Partition trips into groups keyed by their exact stop sequence."""
    buckets: dict[StopSequence, list[Trip]] = {}
    for trip in timetable.trips:
        buckets.setdefault(stop_sequence_of(trip), []).append(trip)
    groups = {}
    for seq, trips in buckets.items():
        trips.sort(key=canonical_key)
        groups[seq] = TripGroup(seq, tuple(t.id for t in trips))
    return GroupIndex(groups)


def pack_group_times(group: TripGroup, timetable: Timetable) -> np.ndarray:
    """Flatten a group's event times into an (n, 2k) int64 array.

    One row per member in canonical order, columns alternating
    arrival/departure.  This is the representation all kernels consume.
    """
    n = len(group.members)
    k = len(group.sequence)
    flat = np.fromiter(
        (
            t
            for trip_id in group.members
            for ev in timetable.trip(trip_id).events
            for t in (ev.arrival, ev.departure)
        ),
        dtype=np.int64,
        count=n * 2 * k,
    )
    return flat.reshape(n, 2 * k)


@dataclass(frozen=True)
class PrecedenceRelation:
    """Tie-broken strict precedence over one group's member indices.

    Irreflexive, antisymmetric and transitive.  dominates(i, j) is true
    iff member i strictly precedes member j, or the pair is fully tied
    and i comes first in canonical order.  The dense matrix is only
    materialised up to DENSE_GROUP_LIMIT members; larger groups answer
    each query from the packed times.
    """

    group: TripGroup
    times: np.ndarray = field(repr=False)
    matrix: np.ndarray | None = field(repr=False)

    def dominates(self, i: int, j: int) -> bool:
        n = len(self.group)
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"member index out of range: ({i}, {j})")
        if i == j:
            return False
        if self.matrix is not None:
            return bool(self.matrix[i, j])
        a = self.times[i]
        b = self.times[j]
        if not (a <= b).all():
            return False
        return bool((a < b).any()) or i < j

    def comparable(self, i: int, j: int) -> bool:
        return self.dominates(i, j) or self.dominates(j, i)


def build_precedence(
    group: TripGroup,
    timetable: Timetable,
    dense_limit: int = DENSE_GROUP_LIMIT,
) -> PrecedenceRelation:
    """Materialise the precedence relation for one group."""
    times = pack_group_times(group, timetable)
    matrix = None
    if len(group) <= dense_limit:
        matrix = kernels.dominance_matrix(times)
    return PrecedenceRelation(group=group, times=times, matrix=matrix)


def tie_broken_dominates(a: Trip, b: Trip, a_before_b: bool) -> bool:
    """Pairwise tie-broken precedence for two trips.

    `a_before_b` states whether a precedes b in canonical order, which
    decides fully tied pairs.  Mirrors PrecedenceRelation.dominates for
    callers holding trips rather than a packed group.
    """
    cmp = compare_trips(a, b)
    if cmp is Comparison.LESS:
        return True
    if cmp is Comparison.EQUAL:
        return a_before_b
    return False
