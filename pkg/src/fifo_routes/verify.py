"""Independent verification of partitions and solver comparison stats.

Everything here re-derives its answers from pairwise trip comparisons;
none of it looks at solver internals, so a verified partition plus a
verified certificate is a complete optimality proof.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from fifo_routes.model import (
    Comparison,
    StopSequence,
    Timetable,
    compare_trips,
    stop_sequence_of,
)
from fifo_routes.ordering import canonical_key, group_by_stop_sequence
from fifo_routes.solvers import (
    AntichainCertificate,
    RoutePartition,
    solve_greedy,
    solve_optimal,
    solve_trivial,
)

# Cap on sampled non-adjacent pairs per route; adjacency plus
# transitivity already implies them, the sample only guards against
# tie-break bugs.
NON_ADJACENT_SAMPLE_CAP = 100


class VerificationError(Exception):
    """The partition references data the timetable does not contain."""


@dataclass(frozen=True)
class Violation:
    route_id: str | None
    trips: tuple[str, ...]
    condition: str  # "Eq1" | "Eq2" | "order" | "cover"
    detail: str

    def __str__(self) -> str:
        where = f"route {self.route_id}" if self.route_id else "partition"
        return f"{where}: {self.condition}: {self.detail}"


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    violations: tuple[Violation, ...]
    groups_checked: int


@dataclass(frozen=True)
class GroupStats:
    sequence: StopSequence
    trips: int
    optimal_routes: int
    greedy_routes: int
    trivial_routes: int


@dataclass(frozen=True)
class ComparisonStats:
    rows: tuple[GroupStats, ...]
    total_trips: int = field(init=False)
    total_optimal: int = field(init=False)
    total_greedy: int = field(init=False)
    total_trivial: int = field(init=False)
    groups_where_greedy_suboptimal: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total_trips", sum(r.trips for r in self.rows))
        object.__setattr__(
            self, "total_optimal", sum(r.optimal_routes for r in self.rows)
        )
        object.__setattr__(
            self, "total_greedy", sum(r.greedy_routes for r in self.rows)
        )
        object.__setattr__(
            self, "total_trivial", sum(r.trivial_routes for r in self.rows)
        )
        object.__setattr__(
            self,
            "groups_where_greedy_suboptimal",
            sum(1 for r in self.rows if r.greedy_routes > r.optimal_routes),
        )


def _check_pair(prev, cur, prev_before_cur: bool) -> str | None:
    """Classify an ordered route pair; None when the order is fine."""
    cmp = compare_trips(prev, cur)
    if cmp is Comparison.DIFFERENT_SHAPE:
        return "Eq1"
    if cmp is Comparison.INCOMPARABLE:
        return "Eq2"
    if cmp is Comparison.GREATER:
        return "order"
    if cmp is Comparison.EQUAL and not prev_before_cur:
        return "order"
    return None


def verify_partition(
    partition: RoutePartition, timetable: Timetable
) -> VerificationReport:
    """Check that a partition is a valid FIFO route grouping.

    Verifies exact coverage, shared stop sequences per route, and the
    tie-broken earlier-than relation on every adjacent pair (plus a
    deterministic sample of non-adjacent pairs).  Raises
    VerificationError for trip ids the timetable does not know.
    """
    violations: list[Violation] = []

    seen: dict[str, str] = {}
    for route in partition.routes:
        for trip_id in route.trips:
            if trip_id not in timetable:
                raise VerificationError(
                    f"route {route.id} references unknown trip {trip_id!r}"
                )
            if trip_id in seen:
                violations.append(
                    Violation(
                        route.id,
                        (trip_id,),
                        "cover",
                        f"trip {trip_id!r} already assigned to route {seen[trip_id]}",
                    )
                )
            else:
                seen[trip_id] = route.id
    for trip in timetable.trips:
        if trip.id not in seen:
            violations.append(
                Violation(
                    None, (trip.id,), "cover", f"trip {trip.id!r} not assigned"
                )
            )

    rng = random.Random(0)
    sequences = set()
    for route in partition.routes:
        trips = [timetable.trip(tid) for tid in route.trips]
        shape = stop_sequence_of(trips[0])
        sequences.add(shape)
        for trip in trips[1:]:
            if stop_sequence_of(trip) != shape:
                violations.append(
                    Violation(
                        route.id,
                        (trips[0].id, trip.id),
                        "Eq1",
                        f"trips {trips[0].id!r} and {trip.id!r} have different"
                        " stop sequences",
                    )
                )
        keys = [canonical_key(t) for t in trips]

        def check(i: int, j: int, route=route, trips=trips, keys=keys):
            label = _check_pair(trips[i], trips[j], keys[i] < keys[j])
            if label in ("Eq2", "order"):
                violations.append(
                    Violation(
                        route.id,
                        (trips[i].id, trips[j].id),
                        label,
                        f"trip {trips[i].id!r} may not precede {trips[j].id!r}"
                        + (" (overtaking)" if label == "Eq2" else ""),
                    )
                )

        for i in range(len(trips) - 1):
            check(i, i + 1)
        n = len(trips)
        if n > 2:
            for _ in range(min(n * n, NON_ADJACENT_SAMPLE_CAP)):
                i = rng.randrange(n - 2)
                j = rng.randrange(i + 2, n)
                check(i, j)

    return VerificationReport(
        valid=not violations,
        violations=tuple(violations),
        groups_checked=len(sequences),
    )


def verify_certificate(
    certificate: AntichainCertificate,
    partition: RoutePartition,
    timetable: Timetable,
) -> bool:
    """Confirm the antichain certificate proves the partition minimal.

    True iff the certificate covers exactly the partition's groups,
    every certified set is pairwise incomparable (recomputed from
    compare_trips, never from solver state), and each set's size equals
    that group's route count.
    """
    if set(certificate.per_group) != set(partition.per_group_counts):
        return False
    for sequence, member_ids in certificate.per_group.items():
        if len(member_ids) != partition.per_group_counts[sequence]:
            return False
        trips = [timetable.trip(tid) for tid in member_ids]
        for i in range(len(trips)):
            if stop_sequence_of(trips[i]) != sequence:
                return False
            for j in range(i + 1, len(trips)):
                if compare_trips(trips[i], trips[j]) is not Comparison.INCOMPARABLE:
                    return False
    return True


def compare_solvers(
    timetable: Timetable, *, threads: int | None = None
) -> ComparisonStats:
    """Run all three solvers on one input and tabulate route counts."""
    optimal, _ = solve_optimal(timetable, threads=threads)
    greedy = solve_greedy(timetable, threads=threads)
    trivial = solve_trivial(timetable)
    index = group_by_stop_sequence(timetable)
    rows = tuple(
        GroupStats(
            sequence=group.sequence,
            trips=len(group),
            optimal_routes=optimal.per_group_counts[group.sequence],
            greedy_routes=greedy.per_group_counts[group.sequence],
            trivial_routes=trivial.per_group_counts[group.sequence],
        )
        for group in index
    )
    return ComparisonStats(rows=rows)
