# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled branch-prune-and-bound kernel.

Mirror of ``_pysearch.search``; any change to the traversal must be made in
both places (``tests/test_backends.py`` compares their counters).
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memcpy
from posix.time cimport clock_gettime, timespec, CLOCK_MONOTONIC

cdef enum:
    PREV = 0
    PREV_FULL = 1
    SELECT = 2

cdef enum:
    EXHAUSTED = 0
    FOUND = 1
    TIMEOUT = 2
    NODE_LIMIT = 3

ctypedef long long i64


cdef struct State:
    int n
    int *indptr
    int *nbr
    i64 *wt
    int eq
    int strategy
    int decision
    i64 ub
    i64 *x
    int *pred
    int *mark_stack
    int mark_top
    i64 *best
    int has_best
    i64 nodes
    i64 prunes
    i64 bounds
    i64 solutions
    double t0
    double deadline
    double t_first
    i64 node_limit
    int status
    i64 *trace
    i64 trace_len
    i64 trace_cap


cdef inline double now() noexcept nogil:
    cdef timespec ts
    clock_gettime(CLOCK_MONOTONIC, &ts)
    return ts.tv_sec + ts.tv_nsec * 1e-9


cdef inline i64 iabs(i64 a) noexcept nogil:
    return -a if a < 0 else a


cdef inline bint violates(State *s, i64 gap, i64 d) noexcept nogil:
    if s.eq:
        return gap != d
    return gap < d


cdef bint ddcf(State *s, int j) noexcept nogil:
    cdef int p, k
    cdef i64 xj = s.x[j]
    for p in range(s.indptr[j], s.indptr[j + 1]):
        k = s.nbr[p]
        if s.x[k] and violates(s, iabs(s.x[k] - xj), s.wt[p]):
            return False
    return True


cdef bint full_check(State *s) noexcept nogil:
    cdef int u, p, w
    for u in range(s.n):
        for p in range(s.indptr[u], s.indptr[u + 1]):
            w = s.nbr[p]
            if u < w and violates(s, iabs(s.x[u] - s.x[w]), s.wt[p]):
                return False
    return True


cdef bint fits_all(State *s, int j, i64 c) noexcept nogil:
    cdef int p, k
    for p in range(s.indptr[j], s.indptr[j + 1]):
        k = s.nbr[p]
        if s.x[k] and violates(s, iabs(s.x[k] - c), s.wt[p]):
            return False
    return True


cdef i64 select_color(State *s, int j) noexcept nogil:
    """Smallest color in [1, ub] consistent with every colored neighbor, 0 if none."""
    cdef int p, k, first = -1
    cdef i64 c, xw, d
    cdef bint moved
    for p in range(s.indptr[j], s.indptr[j + 1]):
        if s.x[s.nbr[p]]:
            first = p
            break
    if first == -1:
        return 1 if s.ub >= 1 else 0
    if s.eq:
        xw = s.x[s.nbr[first]]
        d = s.wt[first]
        c = xw - d
        if c >= 1 and c <= s.ub and fits_all(s, j, c):
            return c
        c = xw + d
        if c >= 1 and c <= s.ub and fits_all(s, j, c):
            return c
        return 0
    c = 1
    moved = True
    while moved:
        moved = False
        for p in range(s.indptr[j], s.indptr[j + 1]):
            k = s.nbr[p]
            if s.x[k] and iabs(s.x[k] - c) < s.wt[p]:
                c = s.x[k] + s.wt[p]
                moved = True
    return c if c <= s.ub else 0


cdef int record(State *s, i64 span) noexcept nogil:
    cdef i64 *grown
    s.solutions += 1
    if s.t_first < 0:
        s.t_first = now() - s.t0
    memcpy(s.best, s.x, s.n * sizeof(i64))
    s.has_best = 1
    if s.trace_len == s.trace_cap:
        grown = <i64 *> realloc(s.trace, 2 * s.trace_cap * sizeof(i64))
        if grown == NULL:
            return -1
        s.trace = grown
        s.trace_cap *= 2
    s.trace[s.trace_len] = span
    s.trace_len += 1
    return 0


cdef void rec(State *s, int i, int j, int dpt, i64 curmax) noexcept nogil:
    cdef int p, k, restart, mark_base = s.mark_top
    cdef i64 colors[2]
    cdef int ncolors = 0, ci
    cdef i64 c, span, xi, d
    cdef bint has_neighbor

    for p in range(s.indptr[j], s.indptr[j + 1]):
        k = s.nbr[p]
        if not s.x[k] and s.pred[k] == -1:
            s.pred[k] = j
            s.mark_stack[s.mark_top] = k
            s.mark_top += 1
    if i == -1:
        i = s.pred[j]

    if s.strategy == SELECT:
        c = select_color(s, j)
        if c:
            colors[0] = c
            ncolors = 1
    elif i == -1:
        colors[0] = 1
        ncolors = 1
    else:
        xi = s.x[i]
        d = 0
        for p in range(s.indptr[j], s.indptr[j + 1]):
            if s.nbr[p] == i:
                d = s.wt[p]
                break
        if xi > d:
            colors[0] = xi - d
            colors[1] = xi + d
            ncolors = 2
        else:
            colors[0] = xi + d
            ncolors = 1

    for ci in range(ncolors):
        if s.status != EXHAUSTED:
            break
        if s.node_limit >= 0 and s.nodes >= s.node_limit:
            s.status = NODE_LIMIT
            break
        s.nodes += 1
        if s.deadline > 0 and (s.nodes & 1023) == 0 and now() > s.deadline:
            s.status = TIMEOUT
            break
        c = colors[ci]
        s.x[j] = c
        span = c if c > curmax else curmax
        if span >= s.ub:
            s.bounds += 1
            s.x[j] = 0
            continue
        if s.strategy == PREV and not ddcf(s, j):
            s.prunes += 1
            s.x[j] = 0
            continue
        if dpt == s.n:
            if s.strategy == PREV_FULL and not full_check(s):
                s.prunes += 1
                s.x[j] = 0
                continue
            if record(s, span) != 0:
                s.status = NODE_LIMIT
            elif s.decision:
                s.status = FOUND
            else:
                s.ub = span
        else:
            has_neighbor = False
            for p in range(s.indptr[j], s.indptr[j + 1]):
                k = s.nbr[p]
                if not s.x[k]:
                    has_neighbor = True
                    rec(s, j, k, dpt + 1, span)
                    if s.status != EXHAUSTED:
                        break
            if not has_neighbor:
                restart = -1
                for k in range(s.n):
                    if not s.x[k] and s.pred[k] != -1:
                        restart = k
                        break
                if restart != -1:
                    rec(s, -1, restart, dpt + 1, span)
                else:
                    for k in range(s.n):
                        if not s.x[k]:
                            rec(s, -1, k, dpt + 1, span)
                            if s.status != EXHAUSTED:
                                break
        s.x[j] = 0

    while s.mark_top > mark_base:
        s.mark_top -= 1
        s.pred[s.mark_stack[s.mark_top]] = -1


def search(int n, indptr, nbr, wt, bint eq, int strategy, bint decision, i64 ub, roots,
           time_limit=None, i64 node_limit=-1):
    """See ``cdgp.solver._pysearch.search``; identical contract."""
    cdef State s
    cdef int v, r, m2 = len(nbr)
    cdef list root_list = [int(r_) for r_ in roots]
    cdef int nroots = len(root_list)
    cdef int *root_arr = <int *> malloc((nroots + 1) * sizeof(int))

    s.n = n
    s.indptr = <int *> malloc((n + 1) * sizeof(int))
    s.nbr = <int *> malloc((m2 + 1) * sizeof(int))
    s.wt = <i64 *> malloc((m2 + 1) * sizeof(i64))
    s.x = <i64 *> malloc(n * sizeof(i64))
    s.best = <i64 *> malloc(n * sizeof(i64))
    s.pred = <int *> malloc(n * sizeof(int))
    s.mark_stack = <int *> malloc((n + 1) * sizeof(int))
    s.trace_cap = 16
    s.trace = <i64 *> malloc(s.trace_cap * sizeof(i64))
    if (root_arr == NULL or s.indptr == NULL or s.nbr == NULL or s.wt == NULL or s.x == NULL
            or s.best == NULL or s.pred == NULL or s.mark_stack == NULL or s.trace == NULL):
        free(root_arr); free(s.indptr); free(s.nbr); free(s.wt); free(s.x)
        free(s.best); free(s.pred); free(s.mark_stack); free(s.trace)
        raise MemoryError()
    try:
        for v in range(n + 1):
            s.indptr[v] = indptr[v]
        for v in range(m2):
            s.nbr[v] = nbr[v]
            s.wt[v] = wt[v]
        for v in range(n):
            s.x[v] = 0
            s.pred[v] = -1
        for v in range(nroots):
            root_arr[v] = root_list[v]
        s.eq = eq
        s.strategy = strategy
        s.decision = decision
        s.ub = ub
        s.mark_top = 0
        s.has_best = 0
        s.nodes = 0
        s.prunes = 0
        s.bounds = 0
        s.solutions = 0
        s.t_first = -1.0
        s.node_limit = node_limit
        s.status = EXHAUSTED
        s.trace_len = 0
        s.t0 = now()
        s.deadline = s.t0 + time_limit if time_limit is not None else -1.0
        with nogil:
            for r in range(nroots):
                rec(&s, -1, root_arr[r], 1, 0)
                if s.status != EXHAUSTED:
                    break
        best = [s.best[v] for v in range(n)] if s.has_best else None
        trace = [s.trace[v] for v in range(s.trace_len)]
        return (s.status, best, s.nodes, s.prunes, s.bounds, s.solutions, s.t_first, trace)
    finally:
        free(root_arr); free(s.indptr); free(s.nbr); free(s.wt); free(s.x)
        free(s.best); free(s.pred); free(s.mark_stack); free(s.trace)
