# cython: boundscheck=False, wraparound=False, nonecheck=False, cdivision=True
"""Compiled kernels: dominance matrix, chain partition, greedy chains.

Hot inner loops of the route-grouping solvers.  Mirrors
fifo_routes._kernels_py statement for statement (same traversal order,
same tie handling), so the two backends produce identical results; see
that module for the full contract.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "c"

cdef cnp.int64_t INF = (<cnp.int64_t>1) << 60


cdef inline bint _dominates(const cnp.int64_t[:, ::1] times, Py_ssize_t m,
                            Py_ssize_t u, Py_ssize_t v) nogil:
    # Row u precedes row v: all times <=, and strict somewhere or u < v
    # (rows are in canonical order, which breaks full ties).
    cdef Py_ssize_t c
    cdef bint eq = True
    for c in range(m):
        if times[u, c] > times[v, c]:
            return False
        if times[u, c] < times[v, c]:
            eq = False
    return (not eq) or u < v


cdef inline bint _edge(const cnp.uint8_t[:, ::1] dom,
                       const cnp.int64_t[:, ::1] times,
                       bint use_matrix, Py_ssize_t m,
                       Py_ssize_t u, Py_ssize_t v) nogil:
    if use_matrix:
        return dom[u, v] != 0
    if u == v:
        return False
    return _dominates(times, m, u, v)


def dominance_matrix(object times_obj):
    """Tie-broken precedence over all ordered row pairs, as uint8."""
    cdef cnp.int64_t[:, ::1] times = np.ascontiguousarray(times_obj, dtype=np.int64)
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t m = times.shape[1]
    out = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] dom = out
    cdef Py_ssize_t i, j, c
    cdef bint le_ij, le_ji
    cdef cnp.int64_t a, b
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                le_ij = True
                le_ji = True
                for c in range(m):
                    a = times[i, c]
                    b = times[j, c]
                    if a < b:
                        le_ji = False
                    elif a > b:
                        le_ij = False
                    if not (le_ij or le_ji):
                        break
                if le_ij:
                    # covers both the strict case and the tie (i < j)
                    dom[i, j] = 1
                elif le_ji:
                    dom[j, i] = 1
    return out


cdef cnp.int64_t _bfs(const cnp.uint8_t[:, ::1] dom,
                      const cnp.int64_t[:, ::1] times,
                      bint use_matrix, Py_ssize_t n, Py_ssize_t m,
                      cnp.int64_t[::1] match_l, cnp.int64_t[::1] match_r,
                      cnp.int64_t[::1] dist, cnp.int64_t[::1] queue) nogil:
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t u, v
    cdef cnp.int64_t w
    cdef cnp.int64_t dist_nil = INF
    for u in range(n):
        if match_l[u] < 0:
            dist[u] = 0
            queue[tail] = u
            tail += 1
        else:
            dist[u] = INF
    while head < tail:
        u = <Py_ssize_t>queue[head]
        head += 1
        if dist[u] >= dist_nil:
            continue
        for v in range(n):
            if not _edge(dom, times, use_matrix, m, u, v):
                continue
            w = match_r[v]
            if w < 0:
                if dist_nil == INF:
                    dist_nil = dist[u] + 1
            elif dist[w] == INF:
                dist[w] = dist[u] + 1
                queue[tail] = w
                tail += 1
    return dist_nil


cdef bint _dfs(Py_ssize_t root, cnp.int64_t dist_nil,
               const cnp.uint8_t[:, ::1] dom,
               const cnp.int64_t[:, ::1] times,
               bint use_matrix, Py_ssize_t n, Py_ssize_t m,
               cnp.int64_t[::1] match_l, cnp.int64_t[::1] match_r,
               cnp.int64_t[::1] dist, cnp.int64_t[::1] stack,
               cnp.int64_t[::1] chosen, cnp.int64_t[::1] cursor) nogil:
    cdef Py_ssize_t top = 0
    cdef Py_ssize_t u, v, k
    cdef cnp.int64_t w
    cdef bint advanced
    stack[0] = root
    while top >= 0:
        u = <Py_ssize_t>stack[top]
        advanced = False
        while cursor[u] < n:
            v = <Py_ssize_t>cursor[u]
            cursor[u] += 1
            if not _edge(dom, times, use_matrix, m, u, v):
                continue
            w = match_r[v]
            if w < 0:
                if dist[u] + 1 == dist_nil:
                    chosen[top] = v
                    for k in range(top + 1):
                        match_l[<Py_ssize_t>stack[k]] = chosen[k]
                        match_r[<Py_ssize_t>chosen[k]] = stack[k]
                    return True
            elif dist[w] == dist[u] + 1:
                chosen[top] = v
                top += 1
                stack[top] = w
                advanced = True
                break
        if not advanced:
            dist[u] = INF
            top -= 1
    return False


cdef void _koenig(const cnp.uint8_t[:, ::1] dom,
                  const cnp.int64_t[:, ::1] times,
                  bint use_matrix, Py_ssize_t n, Py_ssize_t m,
                  cnp.int64_t[::1] match_l, cnp.int64_t[::1] match_r,
                  cnp.int64_t[::1] queue,
                  cnp.uint8_t[::1] seen_l, cnp.uint8_t[::1] seen_r) nogil:
    # Alternating reachability from the free left vertices; the
    # complement of the resulting vertex cover yields the antichain.
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t u, v
    cdef cnp.int64_t w
    for u in range(n):
        seen_l[u] = 0
        seen_r[u] = 0
    for u in range(n):
        if match_l[u] < 0:
            seen_l[u] = 1
            queue[tail] = u
            tail += 1
    while head < tail:
        u = <Py_ssize_t>queue[head]
        head += 1
        for v in range(n):
            if not _edge(dom, times, use_matrix, m, u, v):
                continue
            if v == match_l[u] or seen_r[v]:
                continue
            seen_r[v] = 1
            w = match_r[v]
            if w >= 0 and not seen_l[<Py_ssize_t>w]:
                seen_l[<Py_ssize_t>w] = 1
                queue[tail] = w
                tail += 1


def chain_partition(object times_obj, object dom_obj):
    """Minimum chain partition of one group via maximum matching.

    Returns (successor, antichain); see the pure-Python twin for the
    full contract.
    """
    cdef cnp.int64_t[:, ::1] times = np.ascontiguousarray(times_obj, dtype=np.int64)
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t m = times.shape[1]
    cdef bint use_matrix = dom_obj is not None
    dom_arr = dom_obj if use_matrix else np.zeros((1, 1), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] dom = np.ascontiguousarray(dom_arr, dtype=np.uint8)

    successor_arr = np.full(n, -1, dtype=np.int64)
    pred_arr = np.full(n, -1, dtype=np.int64)
    antichain_arr = np.zeros(n, dtype=np.uint8)
    scratch = np.zeros((4, n), dtype=np.int64)
    seen = np.zeros((2, n), dtype=np.uint8)

    cdef cnp.int64_t[::1] match_l = successor_arr
    cdef cnp.int64_t[::1] match_r = pred_arr
    cdef cnp.int64_t[::1] dist = scratch[0]
    cdef cnp.int64_t[::1] queue = scratch[1]
    cdef cnp.int64_t[::1] stack = scratch[2]
    cdef cnp.int64_t[::1] chosen = scratch[3]
    cdef cnp.uint8_t[::1] seen_l = seen[0]
    cdef cnp.uint8_t[::1] seen_r = seen[1]
    cdef cnp.uint8_t[::1] antichain = antichain_arr
    cursor_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] cursor = cursor_arr

    cdef cnp.int64_t dist_nil
    cdef Py_ssize_t u, i
    if n > 0:
        with nogil:
            while True:
                dist_nil = _bfs(dom, times, use_matrix, n, m,
                                match_l, match_r, dist, queue)
                if dist_nil == INF:
                    break
                for i in range(n):
                    cursor[i] = 0  # current-arc state, reset per phase
                for u in range(n):
                    if match_l[u] < 0:
                        _dfs(u, dist_nil, dom, times, use_matrix, n, m,
                             match_l, match_r, dist, stack, chosen, cursor)
            _koenig(dom, times, use_matrix, n, m,
                    match_l, match_r, queue, seen_l, seen_r)
            for u in range(n):
                if seen_l[u] and not seen_r[u]:
                    antichain[u] = 1

    return successor_arr, antichain_arr


def greedy_partition(object times_obj):
    """Best-fit greedy chains over one group, rows in canonical order.

    Returns the route ordinal per row, ordinals in opening order.
    """
    cdef cnp.int64_t[:, ::1] times = np.ascontiguousarray(times_obj, dtype=np.int64)
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t m = times.shape[1]
    assignment_arr = np.empty(n, dtype=np.int64)
    last_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] assignment = assignment_arr
    cdef cnp.int64_t[::1] last = last_arr
    cdef Py_ssize_t i, r, n_routes = 0
    cdef cnp.int64_t best_r, best_last, l
    with nogil:
        for i in range(n):
            best_r = -1
            best_last = -1
            for r in range(n_routes):
                l = last[r]
                # l < i always holds, so the tie-break index test is free
                if l > best_last and _dominates(times, m, <Py_ssize_t>l, i):
                    best_last = l
                    best_r = r
            if best_r < 0:
                best_r = n_routes
                last[n_routes] = i
                n_routes += 1
            else:
                last[<Py_ssize_t>best_r] = i
            assignment[i] = best_r
    return assignment_arr
