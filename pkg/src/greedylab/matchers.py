"""The greedy matching algorithms.

All matchers run on the degree-bucket deletion structure, emit a full
ExecutionTrace, and are deterministic given (config, seed).  Edge-picking
variants (uniform greedy, the random-edge branch of the degree-1 heuristic,
minimum-degree-sum) share a compacting live-edge pool indexed by stable edge
ids so that every pick and discard is O(1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .dynamic import DynamicGraph
from .errors import ExplosionError, ParameterError
from .graph import Graph
from .matching import Matching
from .policies import UNIFORM, TiePolicy
from .rng import RandomStream
from .trace import ExecutionTrace

ALGORITHMS = ("greedy", "mrg", "mingreedy", "karp-sipser", "edsm", "mds")


@dataclass
class MatcherConfig:
    algorithm: str = "mingreedy"
    first: TiePolicy = field(default_factory=lambda: UNIFORM)
    second: TiePolicy = field(default_factory=lambda: UNIFORM)
    seed: int = 0
    engine: str = "auto"  # auto | python | kernel (mingreedy only)

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ParameterError(f"unknown algorithm {self.algorithm!r}")
        if self.engine not in ("auto", "python", "kernel"):
            raise ParameterError(f"unknown engine {self.engine!r}")


def _stream(cfg: MatcherConfig) -> RandomStream:
    return RandomStream(cfg.seed, (cfg.algorithm,))


class _LiveEdgePool:
    """Uniform sampling over live edges with O(1) discard by edge id."""

    __slots__ = ("eids", "pos")

    def __init__(self, g: Graph):
        self.eids = list(range(g.m))
        self.pos = list(range(g.m))

    def __len__(self):
        return len(self.eids)

    def sample(self, stream: RandomStream) -> int:
        return self.eids[stream.randrange(len(self.eids))]

    def discard(self, eid: int) -> None:
        i = self.pos[eid]
        if i < 0:
            return
        last = self.eids[-1]
        self.eids[i] = last
        self.pos[last] = i
        self.eids.pop()
        self.pos[eid] = -1


class _SumBuckets:
    """Edges bucketed by current endpoint-degree sum.

    Degree sums only decrease, one unit at a time, so each update is an O(1)
    move to the next lower bucket; the minimum pointer is repaired lazily.
    Uniform tie-breaking falls out of sampling an index in the min bucket.
    """

    __slots__ = ("buckets", "where", "cur_min")

    def __init__(self, g: Graph, deg):
        max_sum = 2 * g.max_degree()
        self.buckets = [[] for _ in range(max_sum + 1)]
        self.where = [(-1, -1)] * g.m
        for eid in range(g.m):
            u, v = g.edge(eid)
            s = deg[u] + deg[v]
            self.where[eid] = (s, len(self.buckets[s]))
            self.buckets[s].append(eid)
        self.cur_min = 0

    def _unlink(self, eid: int) -> int:
        s, i = self.where[eid]
        bucket = self.buckets[s]
        last = bucket[-1]
        bucket[i] = last
        self.where[last] = (s, i)
        bucket.pop()
        self.where[eid] = (-1, -1)
        return s

    def decrement(self, eid: int) -> None:
        s = self._unlink(eid)
        bucket = self.buckets[s - 1]
        self.where[eid] = (s - 1, len(bucket))
        bucket.append(eid)
        if s - 1 < self.cur_min:
            self.cur_min = s - 1

    def remove(self, eid: int) -> None:
        self._unlink(eid)

    def pick(self, stream: RandomStream) -> int:
        while not self.buckets[self.cur_min]:
            self.cur_min += 1
        bucket = self.buckets[self.cur_min]
        return bucket[stream.randrange(len(bucket))]


def _finish(trace: ExecutionTrace) -> tuple[Matching, ExecutionTrace]:
    return Matching(trace.matched_pairs()), trace


def run_mingreedy(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Match a uniformly random minimum-degree node to a random neighbor,
    repeating until no edges remain."""
    engine = cfg.engine
    if engine == "auto":
        from . import fastpath
        uniform = cfg.first.kind == "uniform" and cfg.second.kind == "uniform"
        engine = "kernel" if (fastpath.available() and uniform
                              and g.n + g.m >= 100_000) else "python"
    if engine == "kernel":
        from . import fastpath
        return fastpath.run_mingreedy_kernel(g, cfg)
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    trace = ExecutionTrace("mingreedy", {"seed": cfg.seed, "engine": "python",
                                         "n": g.n, "m": g.m})
    while dg.has_live_edges():
        u = dg.min_degree_node(cfg.first, stream)
        d = dg.degree(u)
        v = dg.random_neighbor(u, cfg.second, stream)
        removed = dg.remove_matched_pair(u, v)
        trace.append_step(u, d, v, removed)
    return _finish(trace)


def run_mrg(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Match a uniformly random non-isolated node to a random neighbor."""
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    trace = ExecutionTrace("mrg", {"seed": cfg.seed, "n": g.n, "m": g.m})
    while dg.has_live_edges():
        u = dg.random_live_node(stream)
        d = dg.degree(u)
        v = dg.random_neighbor(u, cfg.second, stream)
        removed = dg.remove_matched_pair(u, v)
        trace.append_step(u, d, v, removed)
    return _finish(trace)


def run_greedy(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Pick an edge uniformly at random among all live edges."""
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    pool = _LiveEdgePool(g)
    trace = ExecutionTrace("greedy", {"seed": cfg.seed, "n": g.n, "m": g.m})
    while dg.has_live_edges():
        eid = pool.sample(stream)
        u, v = g.edge(eid)
        if stream.randrange(2):
            u, v = v, u
        d = dg.degree(u)
        removed = dg.remove_matched_pair(u, v)
        for _, _, gone, _ in removed:
            pool.discard(gone)
        trace.append_step(u, d, v, removed)
    return _finish(trace)


def run_karp_sipser(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Prefer an edge at a degree-1 node; otherwise pick a uniform edge."""
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    pool = _LiveEdgePool(g)
    trace = ExecutionTrace("karp-sipser", {"seed": cfg.seed, "n": g.n, "m": g.m})
    while dg.has_live_edges():
        if dg.min_degree() == 1:
            u = dg.min_degree_node(cfg.first, stream)
            v = dg.random_neighbor(u, cfg.second, stream)
        else:
            eid = pool.sample(stream)
            u, v = g.edge(eid)
            if stream.randrange(2):
                u, v = v, u
        d = dg.degree(u)
        removed = dg.remove_matched_pair(u, v)
        for _, _, gone, _ in removed:
            pool.discard(gone)
        trace.append_step(u, d, v, removed)
    return _finish(trace)


def run_edsm(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Match a minimum-degree node to a neighbor of minimum current degree
    among its neighbors, ties uniform."""
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    trace = ExecutionTrace("edsm", {"seed": cfg.seed, "n": g.n, "m": g.m})
    while dg.has_live_edges():
        u = dg.min_degree_node(cfg.first, stream)
        d = dg.degree(u)
        nbrs = dg.live_neighbors(u)
        best = min(dg.deg[w] for w in nbrs)
        cands = [w for w in nbrs if dg.deg[w] == best]
        if cfg.second.kind == "uniform":
            v = cands[stream.randrange(len(cands))]
        elif cfg.second.kind == "lowest":
            v = min(cands)
        elif cfg.second.kind == "index":
            v = cands[cfg.second.index % len(cands)]
        else:
            v = cfg.second.fn(cands)
        removed = dg.remove_matched_pair(u, v)
        trace.append_step(u, d, v, removed)
    return _finish(trace)


def run_mds(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    """Pick the live edge whose endpoint-degree sum is minimal, ties uniform."""
    stream = _stream(cfg)
    dg = DynamicGraph(g)
    sb = _SumBuckets(g, dg.deg)
    trace = ExecutionTrace("mds", {"seed": cfg.seed, "n": g.n, "m": g.m})
    while dg.has_live_edges():
        eid = sb.pick(stream)
        u, v = g.edge(eid)
        if dg.deg[v] < dg.deg[u] or (dg.deg[v] == dg.deg[u] and v < u):
            u, v = v, u
        d = dg.degree(u)
        removed = dg.remove_matched_pair(u, v)
        survivors = []
        for x, y, gone, _ in removed:
            sb.remove(gone)
            if y != u and y != v:
                survivors.append(y)
        # Each survivor lost exactly one edge per appearance; its remaining
        # live edges drop one unit of degree sum per appearance.
        for y in survivors:
            for cell in dg.live_cells(y):
                sb.decrement(dg.cell_eid[cell])
        trace.append_step(u, d, v, removed)
    return _finish(trace)


_RUNNERS = {
    "greedy": run_greedy,
    "mrg": run_mrg,
    "mingreedy": run_mingreedy,
    "karp-sipser": run_karp_sipser,
    "edsm": run_edsm,
    "mds": run_mds,
}


def run(g: Graph, cfg: MatcherConfig) -> tuple[Matching, ExecutionTrace]:
    return _RUNNERS[cfg.algorithm](g, cfg)


def enumerate_min_degree_executions(g: Graph, limit: int = 100_000
                                    ) -> list[tuple[Matching, ExecutionTrace]]:
    """Every execution reachable by *any* tie-breaking that always matches an
    edge at a minimum-degree node.

    At each step the first endpoint ranges over all minimum-degree nodes and
    the mate over all live neighbors; branches are deduplicated by the picked
    edge, so results are distinct matched-edge sequences.  Raises
    ExplosionError when more than `limit` executions exist.
    """
    adj = [set(g.neighbors(u)) for u in range(g.n)]
    deg = [len(a) for a in adj]
    results: list[tuple[Matching, ExecutionTrace]] = []
    steps: list[tuple[int, int, int, list]] = []

    def live_min() -> int:
        return min((d for d in deg if d > 0), default=0)

    def remove_pair(u: int, v: int) -> list[tuple[int, int, bool]]:
        removed = []
        for w in sorted(adj[u]):
            removed.append((u, w, w == v))
        for w in sorted(adj[v] - {u}):
            removed.append((v, w, False))
        for x, y, _ in removed:
            adj[x].discard(y)
            adj[y].discard(x)
            deg[x] -= 1
            deg[y] -= 1
        return removed

    def restore(removed) -> None:
        for x, y, _ in removed:
            adj[x].add(y)
            adj[y].add(x)
            deg[x] += 1
            deg[y] += 1

    def emit() -> None:
        if len(results) >= limit:
            raise ExplosionError(f"more than {limit} min-degree executions")
        trace = ExecutionTrace("mingreedy", {"exhaustive": True, "n": g.n, "m": g.m})
        for u, d, v, removed in steps:
            trace.append_step(u, d, v, removed)
        results.append((Matching(trace.matched_pairs()), trace))

    def dfs() -> None:
        d = live_min()
        if d == 0:
            emit()
            return
        branches: dict[tuple[int, int], int] = {}
        for u in range(g.n):
            if deg[u] == d:
                for v in sorted(adj[u]):
                    key = (min(u, v), max(u, v))
                    branches.setdefault(key, u)
        for key, selected in branches.items():
            mate = key[1] if selected == key[0] else key[0]
            removed = remove_pair(selected, mate)
            steps.append((selected, d, mate, removed))
            dfs()
            steps.pop()
            restore(removed)

    dfs()
    return results
