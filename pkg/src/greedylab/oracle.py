"""Ground-truth maximum matchings for ratio computation.

Two exact routes: augmenting-path search for bipartite graphs (with an
independent no-augmenting-path check on the result), and exhaustive search
for small general graphs.  A deliberately missing piece is a general-graph
blossom solver; every non-bipartite experiment either fits the exhaustive
guard or carries a generator-certified optimum.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidBipartitionError, TooLargeError
from .graph import Graph
from .matching import Matching, verify_matching


@dataclass
class OptimumCertificate:
    size: int
    witness: Matching | None
    source: str  # bipartite-solver | brute-force | generator-certified
    exact: bool = True

    def validate(self, g: Graph) -> None:
        if self.witness is not None:
            report = verify_matching(g, self.witness)
            if not report.valid:
                raise ValueError(f"certificate witness invalid: {report.problems}")
            if self.exact and report.size != self.size:
                raise ValueError("certificate witness size mismatch")
            if not self.exact and report.size < self.size:
                raise ValueError("lower-bound witness smaller than claimed bound")


def max_matching_bipartite(g: Graph, sides: Sequence[Sequence[int]]) -> OptimumCertificate:
    """Maximum matching via Hopcroft-Karp on an explicit bipartition.

    The bipartition must cover all nodes with no edge inside a side.  The
    returned witness is re-checked by an independent search for augmenting
    paths before the certificate is issued.
    """
    left, right = list(sides[0]), list(sides[1])
    side = [-1] * g.n
    for u in left:
        side[u] = 0
    for v in right:
        if side[v] == 0:
            raise InvalidBipartitionError(f"node {v} appears on both sides")
        side[v] = 1
    if any(s == -1 for s in side):
        raise InvalidBipartitionError("bipartition does not cover all nodes")
    for u, v in g.edges():
        if side[u] == side[v]:
            raise InvalidBipartitionError(f"edge ({u}, {v}) lies inside one side")

    INF = g.n + 1
    mate = [-1] * g.n
    dist = [0] * g.n

    def bfs() -> bool:
        q = deque()
        for u in left:
            if mate[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in g.neighbors(u):
                w = mate[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in g.neighbors(u):
            w = mate[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                mate[u] = v
                mate[v] = u
                return True
        dist[u] = INF
        return False

    import sys
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, g.n + 100))
    try:
        while bfs():
            for u in left:
                if mate[u] == -1:
                    dfs(u)
    finally:
        sys.setrecursionlimit(old_limit)

    pairs = [(u, mate[u]) for u in left if mate[u] != -1]
    witness = Matching(pairs)
    _assert_no_augmenting_path(g, left, mate)
    return OptimumCertificate(size=witness.size, witness=witness, source="bipartite-solver")


def _assert_no_augmenting_path(g: Graph, left: list[int], mate: list[int]) -> None:
    """Independent post-check: BFS over alternating paths from free left nodes
    must reach no free right node."""
    q = deque(u for u in left if mate[u] == -1)
    seen = set(q)
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            w = mate[v]
            if w == -1:
                raise AssertionError("solver output admits an augmenting path")
            if w not in seen:
                seen.add(w)
                q.append(w)


def max_matching_bruteforce(g: Graph) -> OptimumCertificate:
    """Exact maximum matching for small graphs.

    Guard: n <= 18 (memoized search over vertex subsets) or m <= 24
    (branch over edges).
    """
    if g.n <= 18:
        size, pairs = _bruteforce_vertex_dp(g)
    elif g.m <= 24:
        size, pairs = _bruteforce_edge_branch(g)
    else:
        raise TooLargeError(f"brute force guard exceeded (n={g.n}, m={g.m})")
    return OptimumCertificate(size=size, witness=Matching(pairs), source="brute-force")


def _bruteforce_vertex_dp(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    adj_mask = [0] * g.n
    for u, v in g.edges():
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    memo: dict[int, int] = {0: 0}

    def f(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        best = f(rest)
        cand = adj_mask[v] & rest
        while cand:
            ub = cand & -cand
            u = ub.bit_length() - 1
            cand ^= ub
            val = 1 + f(rest & ~ub)
            if val > best:
                best = val
        memo[mask] = best
        return best

    full = (1 << g.n) - 1
    size = f(full)
    # witness reconstruction by walking the memo
    pairs = []
    mask = full
    while mask:
        v = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        if f(mask) == f(rest):
            mask = rest
            continue
        cand = adj_mask[v] & rest
        while cand:
            ub = cand & -cand
            u = ub.bit_length() - 1
            cand ^= ub
            if 1 + f(rest & ~ub) == f(mask):
                pairs.append((v, u))
                mask = rest & ~ub
                break
    return size, pairs


def _bruteforce_edge_branch(g: Graph) -> tuple[int, list[tuple[int, int]]]:
    edges = sorted(g.edges(), key=lambda e: -(g.degree(e[0]) + g.degree(e[1])))
    m = len(edges)
    best = [0, []]

    def rec(i: int, used: set, chosen: list) -> None:
        if len(chosen) > best[0]:
            best[0] = len(chosen)
            best[1] = list(chosen)
        if i == m or len(chosen) + (m - i) <= best[0]:
            return
        u, v = edges[i]
        if u not in used and v not in used:
            used.add(u)
            used.add(v)
            chosen.append((u, v))
            rec(i + 1, used, chosen)
            chosen.pop()
            used.discard(u)
            used.discard(v)
        rec(i + 1, used, chosen)

    rec(0, set(), [])
    return best[0], best[1]
