"""Compiled MinGreedy for large instances.

Mirrors the pure-Python degree-bucket structure on flat arrays and runs the
whole matching loop inside one JIT-compiled kernel.  Hot state is packed
row-wise (a cell's neighbor and mirror handle share a row; a node's degree,
position, bucket, and segment start share a row; a bucket's five fields
share a row) so each structural update touches few cache lines.

Only the uniform/uniform tie policy is served here; everything else routes
to the Python engine.  The kernel draws from numpy's generator, so traces
differ from the Python engine draw-for-draw; each engine is deterministic
for a given seed, and the two are differential-tested on contract
properties, not byte equality.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .matching import Matching
from .rng import derive_key
from .trace import ExecutionTrace

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap if not (args and callable(args[0])) else args[0]

# node row fields
_DEG, _POS, _BKT, _START = 0, 1, 2, 3
# bucket row fields
_BDEG, _BLO, _BHI, _BPREV, _BNEXT = 0, 1, 2, 3, 4


def available() -> bool:
    return _HAVE_NUMBA


@njit(cache=True, inline="always")
def _bucket_down(x, S, nodes, buckets, freelist, state):
    # state[0] = head bucket id (-1 none), state[1] = free-stack top
    b = nodes[x, _BKT]
    lo = buckets[b, _BLO]
    px = nodes[x, _POS]
    if px != lo:
        y = S[lo]
        S[lo] = x
        S[px] = y
        nodes[x, _POS] = lo
        nodes[y, _POS] = px
    buckets[b, _BLO] = lo + 1
    dn = buckets[b, _BDEG] - 1
    left = buckets[b, _BPREV]
    if dn == 0:
        nodes[x, _BKT] = -1
    elif left != -1 and buckets[left, _BDEG] == dn:
        buckets[left, _BHI] += 1
        nodes[x, _BKT] = left
    else:
        state[1] -= 1
        nb = freelist[state[1]]
        buckets[nb, _BDEG] = dn
        buckets[nb, _BLO] = lo
        buckets[nb, _BHI] = lo + 1
        buckets[nb, _BPREV] = left
        buckets[nb, _BNEXT] = b
        if left != -1:
            buckets[left, _BNEXT] = nb
        else:
            state[0] = nb
        buckets[b, _BPREV] = nb
        nodes[x, _BKT] = nb
    if buckets[b, _BLO] == buckets[b, _BHI]:
        pb = buckets[b, _BPREV]
        nx = buckets[b, _BNEXT]
        if pb != -1:
            buckets[pb, _BNEXT] = nx
        else:
            state[0] = nx
        if nx != -1:
            buckets[nx, _BPREV] = pb
        freelist[state[1]] = b
        state[1] += 1


@njit(cache=True, inline="always")
def _delete_cell(u, cell, cells, S, nodes, buckets, freelist, state):
    w = cells[cell, 0]
    cw = cells[cell, 1]
    lu = nodes[u, _START] + nodes[u, _DEG] - 1
    if cell != lu:
        cells[cell, 0] = cells[lu, 0]
        cells[cell, 1] = cells[lu, 1]
        cells[cells[cell, 1], 1] = cell
    nodes[u, _DEG] -= 1
    _bucket_down(u, S, nodes, buckets, freelist, state)
    lw = nodes[w, _START] + nodes[w, _DEG] - 1
    if cw != lw:
        cells[cw, 0] = cells[lw, 0]
        cells[cw, 1] = cells[lw, 1]
        cells[cells[cw, 1], 1] = cw
    nodes[w, _DEG] -= 1
    _bucket_down(w, S, nodes, buckets, freelist, state)


@njit(cache=True)
def _mingreedy_njit(n, cells, nodes, seed):
    np.random.seed(seed)
    m = cells.shape[0] // 2
    maxd = 0
    for u in range(n):
        if nodes[u, _DEG] > maxd:
            maxd = nodes[u, _DEG]
    # counting sort of nodes by degree
    cnt = np.zeros(maxd + 2, np.int64)
    for u in range(n):
        cnt[nodes[u, _DEG] + 1] += 1
    for d in range(1, maxd + 2):
        cnt[d] += cnt[d - 1]
    S = np.empty(n, np.int64)
    cursor = cnt[:maxd + 1].copy()
    for u in range(n):
        d = nodes[u, _DEG]
        p = cursor[d]
        cursor[d] += 1
        S[p] = u
        nodes[u, _POS] = p
    # bucket pool
    bcap = n + 2
    buckets = np.empty((bcap, 5), np.int64)
    freelist = np.empty(bcap, np.int64)
    state = np.zeros(2, np.int64)
    used = 0
    head = -1
    tail = -1
    i = 0
    while i < n:
        d = nodes[S[i], _DEG]
        j = i
        while j < n and nodes[S[j], _DEG] == d:
            j += 1
        if d > 0:
            b = used
            used += 1
            buckets[b, _BDEG] = d
            buckets[b, _BLO] = i
            buckets[b, _BHI] = j
            buckets[b, _BPREV] = tail
            buckets[b, _BNEXT] = -1
            if tail == -1:
                head = b
            else:
                buckets[tail, _BNEXT] = b
            tail = b
            for k in range(i, j):
                nodes[S[k], _BKT] = b
        else:
            for k in range(i, j):
                nodes[S[k], _BKT] = -1
        i = j
    ft = 0
    for b in range(used, bcap):
        freelist[ft] = b
        ft += 1
    state[0] = head
    state[1] = ft
    # trace columns
    smax = n // 2 + 1
    sel = np.empty(smax, np.int64)
    seldeg = np.empty(smax, np.int64)
    mate = np.empty(smax, np.int64)
    rem_src = np.empty(m, np.int32)
    rem_dst = np.empty(m, np.int32)
    rem_m = np.zeros(m, np.uint8)
    step_ptr = np.empty(smax + 1, np.int64)
    step_ptr[0] = 0
    nsteps = 0
    rc = 0
    while state[0] != -1:
        b = state[0]
        lo = buckets[b, _BLO]
        u = S[lo + np.random.randint(0, buckets[b, _BHI] - lo)]
        du = nodes[u, _DEG]
        v = cells[nodes[u, _START] + np.random.randint(0, du), 0]
        sel[nsteps] = u
        seldeg[nsteps] = du
        mate[nsteps] = v
        while nodes[u, _DEG] > 0:
            cell = nodes[u, _START] + nodes[u, _DEG] - 1
            w = cells[cell, 0]
            rem_src[rc] = u
            rem_dst[rc] = w
            if w == v:
                rem_m[rc] = 1
            rc += 1
            _delete_cell(u, cell, cells, S, nodes, buckets, freelist, state)
        while nodes[v, _DEG] > 0:
            cell = nodes[v, _START] + nodes[v, _DEG] - 1
            w = cells[cell, 0]
            rem_src[rc] = v
            rem_dst[rc] = w
            rc += 1
            _delete_cell(v, cell, cells, S, nodes, buckets, freelist, state)
        nsteps += 1
        step_ptr[nsteps] = rc
    return nsteps, rc, sel, seldeg, mate, rem_src, rem_dst, rem_m, step_ptr


def run_mingreedy_kernel(g: Graph, cfg) -> tuple[Matching, ExecutionTrace]:
    if not _HAVE_NUMBA:
        raise RuntimeError("numba is not available; use engine='python'")
    seed32 = derive_key(cfg.seed, "mingreedy-kernel") & 0x7FFFFFFF
    cells = np.empty((2 * g.m, 2), np.int32)
    cells[:, 0] = g.nbr
    cells[:, 1] = g.mirror
    nodes = np.empty((g.n, 4), np.int64)
    nodes[:, _DEG] = g.degrees()
    nodes[:, _START] = g.indptr[:-1]
    nsteps, rc, sel, seldeg, mate, rem_src, rem_dst, rem_m, step_ptr = _mingreedy_njit(
        g.n, cells, nodes, seed32)
    trace = ExecutionTrace.from_columns(
        "mingreedy", {"seed": cfg.seed, "engine": "kernel", "n": g.n, "m": g.m},
        sel[:nsteps], seldeg[:nsteps], mate[:nsteps],
        rem_src[:rc], rem_dst[:rc], rem_m[:rc], step_ptr[:nsteps + 1])
    return Matching(trace.matched_pairs()), trace
