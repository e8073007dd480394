"""Pure-Python kernels: dominance matrix, chain partition, greedy.

Fallback for environments where the compiled extension is unavailable.
Semantics and traversal order match fifo_routes._kernels exactly, so
both backends produce identical results (not just identical counts).

All kernels operate on one trip group at a time.  `times` is an
(n, m) int64 array, one row per trip in canonical order, columns being
the flattened [arr0, dep0, arr1, dep1, ...] event times.  Row i
dominates row j when every time of i is <= the corresponding time of j
and either some inequality is strict or, for fully tied rows, i < j
(the canonical order breaks ties).
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

_INF = 1 << 60


def _row_dominates(times, i, j):
    le = True
    eq = True
    ri = times[i]
    rj = times[j]
    for a, b in zip(ri, rj):
        if a > b:
            le = False
            break
        if a < b:
            eq = False
    return le and (not eq or i < j)


def dominance_matrix(times: np.ndarray) -> np.ndarray:
    """Tie-broken precedence over all ordered row pairs, as uint8."""
    n = times.shape[0]
    rows = times.tolist()
    dom = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            rj = rows[j]
            le_ij = True
            le_ji = True
            for a, b in zip(ri, rj):
                if a < b:
                    le_ji = False
                elif a > b:
                    le_ij = False
                if not (le_ij or le_ji):
                    break
            if le_ij:
                # covers both the strict case and the tie (i < j here)
                dom[i, j] = 1
            elif le_ji:
                dom[j, i] = 1
    return dom


def chain_partition(times: np.ndarray, dom: np.ndarray | None):
    """Minimum chain partition of one group via maximum matching.

    Hopcroft-Karp over the bipartite graph with a left and a right copy
    of the group and an edge (i -> j) per dominance pair.  When `dom` is
    None, edges are tested on demand from `times` (used for groups too
    large to materialise the dense relation).

    Returns (successor, antichain): successor[i] is the matched chain
    successor of row i or -1, and antichain is a uint8 mask of a
    maximum antichain obtained from the final layering by the
    vertex-cover complement.
    """
    n = times.shape[0]
    rows = times.tolist()

    if dom is not None:
        dom_rows = dom.tolist()

        def neighbors(u):
            du = dom_rows[u]
            return [v for v in range(n) if du[v]]

    else:

        def neighbors(u):
            out = []
            for v in range(n):
                if v != u and _row_dominates(rows, u, v):
                    out.append(v)
            return out

    adj = [neighbors(u) for u in range(n)]
    match_l = [-1] * n  # successor chosen for left copy i
    match_r = [-1] * n  # predecessor chosen for right copy j
    dist = [0] * n

    def bfs():
        queue = []
        for u in range(n):
            if match_l[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        dist_nil = _INF
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            if dist[u] >= dist_nil:
                continue
            for v in adj[u]:
                w = match_r[v]
                if w < 0:
                    if dist_nil == _INF:
                        dist_nil = dist[u] + 1
                elif dist[w] == _INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist_nil

    def dfs(root, dist_nil, cursor):
        stack = [root]
        chosen = [-1]
        while stack:
            u = stack[-1]
            advanced = False
            while cursor[u] < len(adj[u]):
                v = adj[u][cursor[u]]
                cursor[u] += 1
                w = match_r[v]
                if w < 0:
                    if dist[u] + 1 == dist_nil:
                        chosen[-1] = v
                        for uu, vv in zip(stack, chosen):
                            match_l[uu] = vv
                            match_r[vv] = uu
                        return True
                elif dist[w] == dist[u] + 1:
                    chosen[-1] = v
                    stack.append(w)
                    chosen.append(-1)
                    advanced = True
                    break
            if not advanced:
                dist[u] = _INF
                stack.pop()
                chosen.pop()
        return False

    while True:
        dist_nil = bfs()
        if dist_nil == _INF:
            break
        cursor = [0] * n  # current-arc state, reset once per phase
        for u in range(n):
            if match_l[u] < 0:
                dfs(u, dist_nil, cursor)

    # Koenig construction: alternating reachability from the free left
    # vertices; the antichain is {i : left i reached, right i not}.
    seen_l = [False] * n
    seen_r = [False] * n
    queue = [u for u in range(n) if match_l[u] < 0]
    for u in queue:
        seen_l[u] = True
    head = 0
    while head < len(queue):
        u = queue[head]
        head += 1
        for v in adj[u]:
            if v == match_l[u] or seen_r[v]:
                continue
            seen_r[v] = True
            w = match_r[v]
            if w >= 0 and not seen_l[w]:
                seen_l[w] = True
                queue.append(w)

    successor = np.array(match_l, dtype=np.int64)
    antichain = np.array(
        [1 if seen_l[i] and not seen_r[i] else 0 for i in range(n)],
        dtype=np.uint8,
    )
    return successor, antichain


def greedy_partition(times: np.ndarray) -> np.ndarray:
    """Best-fit greedy chains over one group, rows in canonical order.

    Each trip goes to the open route whose last trip precedes it and is
    latest in canonical order; otherwise a new route opens.  Returns the
    route ordinal per row, ordinals in opening order.
    """
    n = times.shape[0]
    rows = times.tolist()
    assignment = np.empty(n, dtype=np.int64)
    last_member = []  # last row index per open route
    for i in range(n):
        best_route = -1
        best_last = -1
        for r, last in enumerate(last_member):
            # last < i always holds, so the tie-break index test is free
            if last > best_last and _row_dominates(rows, last, i):
                best_last = last
                best_route = r
        if best_route < 0:
            best_route = len(last_member)
            last_member.append(i)
        else:
            last_member[best_route] = i
        assignment[i] = best_route
    return assignment
