"""Numba kernels for the (k, l)-pebble game, 0 <= l < 2k.

State: ``peb[v]`` free pebbles, ``out[v, :outdeg[v]]`` heads of accepted edges
oriented away from v.  ``peb[v] + outdeg[v] == k`` holds throughout.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _fetch(u, v, peb, out, outdeg, parent, stack):
    # DFS from u along out-edges (v blocked) for a free pebble; reverse the path.
    n = peb.shape[0]
    for i in range(n):
        parent[i] = -2
    parent[u] = -1
    parent[v] = -1
    top = 0
    stack[top] = u
    top += 1
    while top > 0:
        top -= 1
        x = stack[top]
        for j in range(outdeg[x]):
            y = out[x, j]
            if parent[y] != -2:
                continue
            parent[y] = x
            if peb[y] > 0:
                peb[y] -= 1
                while y != u:
                    p = parent[y]
                    for q in range(outdeg[p]):
                        if out[p, q] == y:
                            out[p, q] = out[p, outdeg[p] - 1]
                            break
                    outdeg[p] -= 1
                    out[y, outdeg[y]] = p
                    outdeg[y] += 1
                    y = p
                peb[u] += 1
                return True
            stack[top] = y
            top += 1
    return False


@njit(cache=True)
def gather(u, v, l, peb, out, outdeg, parent, stack):
    """Try to collect l + 1 pebbles on u and v."""
    while peb[u] + peb[v] < l + 1:
        if not _fetch(u, v, peb, out, outdeg, parent, stack):
            if not _fetch(v, u, peb, out, outdeg, parent, stack):
                return False
    return True


@njit(cache=True)
def _accept(u, v, peb, out, outdeg):
    if peb[u] > 0:
        peb[u] -= 1
        out[u, outdeg[u]] = v
        outdeg[u] += 1
    else:
        peb[v] -= 1
        out[v, outdeg[v]] = u
        outdeg[v] += 1


@njit(cache=True)
def run(n, us, vs, k, l):
    """Play the game over the edge list; returns (accepted mask, peb, out, outdeg)."""
    peb = np.full(n, k, np.int64)
    out = np.empty((n, max(k, 1)), np.int64)
    outdeg = np.zeros(n, np.int64)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    acc = np.zeros(us.shape[0], np.bool_)
    for i in range(us.shape[0]):
        u = us[i]
        v = vs[i]
        if gather(u, v, l, peb, out, outdeg, parent, stack):
            _accept(u, v, peb, out, outdeg)
            acc[i] = True
    return acc, peb, out, outdeg


@njit(cache=True)
def reach(u, v, out, outdeg):
    """Vertices reachable from {u, v} along out-edges, as a boolean mask."""
    n = outdeg.shape[0]
    seen = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    top = 0
    seen[u] = True
    seen[v] = True
    stack[0] = u
    stack[1] = v
    top = 2
    while top > 0:
        top -= 1
        x = stack[top]
        for j in range(outdeg[x]):
            y = out[x, j]
            if not seen[y]:
                seen[y] = True
                stack[top] = y
                top += 1
    return seen


@njit(cache=True)
def batch_rank(n, mult, pair_u, pair_v, k, l):
    """Rank of every multiplicity vector (rows of ``mult``) over the fixed pair list."""
    rows = mult.shape[0]
    res = np.zeros(rows, np.int64)
    peb = np.empty(n, np.int64)
    out = np.empty((n, max(k, 1)), np.int64)
    outdeg = np.empty(n, np.int64)
    parent = np.empty(n, np.int64)
    stack = np.empty(n, np.int64)
    for r in range(rows):
        for i in range(n):
            peb[i] = k
            outdeg[i] = 0
        cnt = 0
        for p in range(mult.shape[1]):
            u = pair_u[p]
            v = pair_v[p]
            for _ in range(mult[r, p]):
                if gather(u, v, l, peb, out, outdeg, parent, stack):
                    _accept(u, v, peb, out, outdeg)
                    cnt += 1
        res[r] = cnt
    return res
