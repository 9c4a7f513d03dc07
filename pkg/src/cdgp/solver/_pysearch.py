"""Pure-Python branch-prune-and-bound kernel.

Reference twin of the compiled ``_bpb`` kernel: same arguments, same
traversal, same counters. Used when the extension is not built or when
``CDGP_PURE_PYTHON=1``.
"""

import sys
import time

PREV, PREV_FULL, SELECT = 0, 1, 2
EXHAUSTED, FOUND, TIMEOUT, NODE_LIMIT = 0, 1, 2, 3


def search(n, indptr, nbr, wt, eq, strategy, decision, ub, roots,
           time_limit=None, node_limit=-1):
    """Run the search and return a result tuple.

    ``ub`` is exclusive: a partial coloring whose span reaches it is bounded.
    Returns ``(status, best, nodes, prunes, bounds, solutions, t_first,
    trace)`` where ``best`` is a color list or ``None`` and ``t_first`` is
    seconds from start (``-1.0`` when nothing was found).
    """
    x = [0] * n
    pred = [-1] * n
    adj = [list(zip(nbr[indptr[v]:indptr[v + 1]], wt[indptr[v]:indptr[v + 1]])) for v in range(n)]
    edges = [(u, w, d) for u in range(n) for w, d in adj[u] if u < w]

    st = {
        "ub": ub, "nodes": 0, "prunes": 0, "bounds": 0, "solutions": 0,
        "best": None, "t_first": -1.0, "status": EXHAUSTED,
    }
    trace = []
    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit

    def ddcf(j):
        xj = x[j]
        for k, d in adj[j]:
            xk = x[k]
            if xk:
                g = xk - xj if xk > xj else xj - xk
                if (g != d) if eq else (g < d):
                    return False
        return True

    def full_check():
        for u, w, d in edges:
            g = abs(x[u] - x[w])
            if (g != d) if eq else (g < d):
                return False
        return True

    def select_color(j, limit):
        colored = [(x[k], d) for k, d in adj[j] if x[k]]
        if not colored:
            return 1 if limit >= 1 else 0
        if eq:
            xw, d = colored[0]
            for c in (xw - d, xw + d):
                if 1 <= c <= limit and all(abs(xk - c) == dk for xk, dk in colored):
                    return c
            return 0
        c = 1
        moved = True
        while moved:
            moved = False
            for xk, dk in colored:
                if abs(xk - c) < dk:
                    c = xk + dk
                    moved = True
        return c if c <= limit else 0

    def rec(i, j, dpt, curmax):
        marked = []
        for k, _ in adj[j]:
            if not x[k] and pred[k] == -1:
                pred[k] = j
                marked.append(k)
        if i == -1:
            i = pred[j]
        if strategy == SELECT:
            c = select_color(j, st["ub"])
            colors = (c,) if c else ()
        elif i == -1:
            colors = (1,)
        else:
            xi = x[i]
            d = next(dd for k, dd in adj[j] if k == i)
            colors = (xi - d, xi + d) if xi > d else (xi + d,)

        for c in colors:
            if st["status"] != EXHAUSTED:
                break
            if node_limit >= 0 and st["nodes"] >= node_limit:
                st["status"] = NODE_LIMIT
                break
            st["nodes"] += 1
            if deadline is not None and (st["nodes"] & 1023) == 0 and time.perf_counter() > deadline:
                st["status"] = TIMEOUT
                break
            x[j] = c
            span = c if c > curmax else curmax
            if span >= st["ub"]:
                st["bounds"] += 1
                x[j] = 0
                continue
            if strategy == PREV and not ddcf(j):
                st["prunes"] += 1
                x[j] = 0
                continue
            if dpt == n:
                if strategy == PREV_FULL and not full_check():
                    st["prunes"] += 1
                    x[j] = 0
                    continue
                st["solutions"] += 1
                if st["t_first"] < 0:
                    st["t_first"] = time.perf_counter() - t0
                st["best"] = list(x)
                trace.append(span)
                if decision:
                    st["status"] = FOUND
                else:
                    st["ub"] = span
            else:
                has_neighbor = False
                for k, _ in adj[j]:
                    if not x[k]:
                        has_neighbor = True
                        rec(j, k, dpt + 1, span)
                        if st["status"] != EXHAUSTED:
                            break
                if not has_neighbor:
                    restart = next((k for k in range(n) if not x[k] and pred[k] != -1), -1)
                    if restart != -1:
                        rec(-1, restart, dpt + 1, span)
                    else:
                        # new component: every uncolored vertex is a candidate root
                        for k in range(n):
                            if not x[k]:
                                rec(-1, k, dpt + 1, span)
                                if st["status"] != EXHAUSTED:
                                    break
            x[j] = 0

        for k in marked:
            pred[k] = -1

    old_limit = sys.getrecursionlimit()
    if old_limit < 4 * n + 200:
        sys.setrecursionlimit(4 * n + 200)
    try:
        for r in roots:
            rec(-1, r, 1, 0)
            if st["status"] != EXHAUSTED:
                break
    finally:
        sys.setrecursionlimit(old_limit)

    return (st["status"], st["best"], st["nodes"], st["prunes"], st["bounds"],
            st["solutions"], st["t_first"], trace)
