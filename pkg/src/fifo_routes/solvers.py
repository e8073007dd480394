"""Route partition solvers.

solve_optimal computes a minimum chain partition per trip group via
maximum bipartite matching (Hopcroft-Karp) and certifies minimality
with a maximum antichain from the Koenig vertex-cover complement.
solve_greedy is the deterministic best-fit heuristic, solve_trivial the
one-route-per-trip baseline, and the brute_force_* functions are
independent oracles for small groups.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cmp_to_key

from fifo_routes import kernels
from fifo_routes.model import Route, StopSequence, Timetable
from fifo_routes.ordering import (
    DENSE_GROUP_LIMIT,
    GroupIndex,
    TripGroup,
    build_precedence,
    group_by_stop_sequence,
    pack_group_times,
)

DEFAULT_BRUTE_PARTITION_LIMIT = 10
DEFAULT_BRUTE_ANTICHAIN_LIMIT = 20


class BruteForceLimitError(Exception):
    """A brute-force oracle refused a group above its size limit."""

    def __init__(self, sequence: StopSequence, size: int, limit: int):
        self.sequence = sequence
        self.size = size
        self.limit = limit
        super().__init__(
            f"group over {'-'.join(sequence)} has {size} trips,"
            f" above the brute-force limit of {limit}"
        )


@dataclass(frozen=True)
class RoutePartition:
    """Assignment of every input trip to exactly one FIFO route."""

    routes: tuple[Route, ...]
    algorithm: str
    per_group_counts: dict[StopSequence, int]

    @property
    def total_routes(self) -> int:
        return len(self.routes)

    @property
    def total_trips(self) -> int:
        return sum(len(r.trips) for r in self.routes)


@dataclass(frozen=True)
class AntichainCertificate:
    """Per-group maximum antichains witnessing partition minimality.

    Each set is pairwise incomparable and, by Dilworth's theorem, its
    size equals the minimum number of chains covering the group.
    """

    per_group: dict[StopSequence, tuple[str, ...]]

    def size(self, sequence: StopSequence) -> int:
        return len(self.per_group[sequence])


def _route_id_width(total: int) -> int:
    return max(4, len(str(max(total, 1))))


def _emit_routes(chains_per_group, algorithm: str) -> RoutePartition:
    """Assemble Route objects from per-group chains of trip ids.

    `chains_per_group` is a list of (sequence, [chain, ...]) in
    canonical group order; route ids are ordinals in that order, making
    outputs diff-stable.
    """
    total = sum(len(chains) for _, chains in chains_per_group)
    width = _route_id_width(total)
    routes = []
    counts = {}
    ordinal = 1
    for sequence, chains in chains_per_group:
        counts[sequence] = len(chains)
        for chain in chains:
            routes.append(Route(id=f"R{ordinal:0{width}d}", trips=tuple(chain)))
            ordinal += 1
    return RoutePartition(
        routes=tuple(routes), algorithm=algorithm, per_group_counts=counts
    )


def _map_groups(fn, index: GroupIndex, threads: int | None):
    groups = list(index)
    if threads is None:
        threads = os.cpu_count() or 1
    if threads <= 1 or len(groups) < 2:
        return [fn(g) for g in groups]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, groups))


def _chains_from_successors(group: TripGroup, successor) -> list[list[str]]:
    successor = successor.tolist()
    n = len(group)
    has_pred = [False] * n
    for i in range(n):
        if successor[i] >= 0:
            has_pred[successor[i]] = True
    chains = []
    for head in range(n):
        if has_pred[head]:
            continue
        chain = []
        i = head
        while i >= 0:
            chain.append(group.members[i])
            i = successor[i]
        chains.append(chain)
    return chains


def solve_optimal(
    timetable: Timetable,
    *,
    threads: int | None = None,
    dense_limit: int = DENSE_GROUP_LIMIT,
) -> tuple[RoutePartition, AntichainCertificate]:
    """Minimum FIFO route partition with an optimality certificate.

    Per group: a maximum matching on the bipartite predecessor/successor
    graph yields chains (route count = group size - matching size), and
    the final layering yields a maximum antichain of the same size.
    """
    index = group_by_stop_sequence(timetable)

    def solve_group(group: TripGroup):
        times = pack_group_times(group, timetable)
        dom = kernels.dominance_matrix(times) if len(group) <= dense_limit else None
        successor, antimask = kernels.chain_partition(times, dom)
        chains = _chains_from_successors(group, successor)
        antichain = tuple(
            group.members[i] for i in range(len(group)) if antimask[i]
        )
        return group.sequence, chains, antichain

    results = _map_groups(solve_group, index, threads)
    partition = _emit_routes([(seq, chains) for seq, chains, _ in results], "optimal")
    certificate = AntichainCertificate(
        per_group={seq: antichain for seq, _, antichain in results}
    )
    return partition, certificate


def solve_greedy(
    timetable: Timetable, *, threads: int | None = None
) -> RoutePartition:
    """Best-fit greedy partition, deterministic.

    Members are processed in canonical order; each trip extends the
    feasible open route whose last trip is latest in canonical order,
    or opens a new route.
    """
    index = group_by_stop_sequence(timetable)

    def solve_group(group: TripGroup):
        times = pack_group_times(group, timetable)
        assignment = kernels.greedy_partition(times).tolist()
        n_routes = max(assignment) + 1 if assignment else 0
        chains = [[] for _ in range(n_routes)]
        for i, route_idx in enumerate(assignment):
            chains[route_idx].append(group.members[i])
        return group.sequence, chains

    results = _map_groups(solve_group, index, threads)
    return _emit_routes(results, "greedy")


def solve_trivial(timetable: Timetable) -> RoutePartition:
    """One singleton route per trip: the valid upper-bound baseline."""
    index = group_by_stop_sequence(timetable)
    chains_per_group = [
        (group.sequence, [[member] for member in group.members]) for group in index
    ]
    return _emit_routes(chains_per_group, "trivial")


def _chain_sort(members, relation):
    """Order a set of pairwise comparable member indices into a chain."""

    def cmp(i, j):
        if relation.dominates(i, j):
            return -1
        if relation.dominates(j, i):
            return 1
        raise ValueError(f"members {i} and {j} are incomparable")

    return sorted(members, key=cmp_to_key(cmp))


def brute_force_min(
    group: TripGroup,
    timetable: Timetable,
    limit: int = DEFAULT_BRUTE_PARTITION_LIMIT,
) -> RoutePartition:
    """Exhaustive minimum chain partition of one group.

    Enumerates set partitions as restricted-growth strings in
    lexicographic order, keeping the first one with the fewest blocks
    whose blocks are all chains.  Independent of the matching solver;
    this is the oracle the optimal path is tested against.
    """
    n = len(group)
    if n > limit:
        raise BruteForceLimitError(group.sequence, n, limit)
    relation = build_precedence(group, timetable)

    best_blocks: list[list[int]] | None = None
    best_count = n + 1
    blocks: list[list[int]] = []

    def recurse(i: int):
        nonlocal best_blocks, best_count
        if len(blocks) >= best_count:
            return  # cannot beat the incumbent
        if i == n:
            best_count = len(blocks)
            best_blocks = [block.copy() for block in blocks]
            return
        for block in blocks:
            if all(relation.comparable(i, j) for j in block):
                block.append(i)
                recurse(i + 1)
                block.pop()
        blocks.append([i])
        recurse(i + 1)
        blocks.pop()

    recurse(0)
    assert best_blocks is not None
    chains = [
        [group.members[i] for i in _chain_sort(block, relation)]
        for block in best_blocks
    ]
    return _emit_routes([(group.sequence, chains)], "brute")


def solve_brute(
    timetable: Timetable, limit: int = DEFAULT_BRUTE_PARTITION_LIMIT
) -> RoutePartition:
    """Brute-force partition of a whole timetable, group by group."""
    index = group_by_stop_sequence(timetable)
    chains_per_group = []
    for group in index:
        part = brute_force_min(group, timetable, limit=limit)
        chains_per_group.append(
            (group.sequence, [list(route.trips) for route in part.routes])
        )
    return _emit_routes(chains_per_group, "brute")


def max_antichain_bruteforce(
    group: TripGroup,
    timetable: Timetable,
    limit: int = DEFAULT_BRUTE_ANTICHAIN_LIMIT,
) -> tuple[str, ...]:
    """Maximum pairwise-incomparable subset of one group.

    Subset enumeration (with memoisation) over the incomparability
    graph; the secondary oracle for the Dilworth equality checks.
    """
    n = len(group)
    if n > limit:
        raise BruteForceLimitError(group.sequence, n, limit)
    relation = build_precedence(group, timetable)
    incomp = [0] * n
    for i in range(n):
        for j in range(n):
            if i != j and not relation.comparable(i, j):
                incomp[i] |= 1 << j

    memo: dict[int, int] = {0: 0}

    def best(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        result = max(best(mask & ~(1 << v)), 1 + best(mask & incomp[v]))
        memo[mask] = result
        return result

    chosen = []
    mask = (1 << n) - 1
    while mask:
        v = (mask & -mask).bit_length() - 1
        if 1 + best(mask & incomp[v]) >= best(mask & ~(1 << v)):
            chosen.append(v)
            mask &= incomp[v]
        else:
            mask &= ~(1 << v)
    return tuple(group.members[i] for i in chosen)
