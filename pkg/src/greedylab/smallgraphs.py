"""Exhaustive enumeration of small connected degree-bounded graphs.

Generation is by vertex augmentation: every connected graph on n nodes has
a non-cut vertex, so it arises from a connected graph on n-1 nodes by
attaching one new vertex to a nonempty set of nodes whose degrees stay
within the bound.  Duplicates are removed with a canonical form: the
lexicographically greatest (row-bits, degree) sequence over all vertex
orderings, found by branch and bound (at each level only the argmax rows
can extend a maximum, which is what makes this exact and fast).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .graph import Graph


def canonical_form(n: int, adj_masks: tuple[int, ...]) -> tuple:
    """Canonical key: equal for two graphs iff they are isomorphic."""
    degs = [bin(a).count("1") for a in adj_masks]
    best: list | None = None

    def rec(perm: list[int], used: int, rows: list):
        nonlocal best
        k = len(perm)
        if k == n:
            if best is None or rows > best:
                best = list(rows)
            return
        scored = []
        for v in range(n):
            if used >> v & 1:
                continue
            row = 0
            for i, p in enumerate(perm):
                if adj_masks[v] >> p & 1:
                    row |= 1 << (k - i)
            scored.append(((row, degs[v]), v))
        mx = max(s for s, _ in scored)
        for s, v in scored:
            if s == mx:
                rows.append(s)
                rec(perm + [v], used | (1 << v), rows)
                rows.pop()

    rec([], 0, [])
    return tuple(best)


def _is_connected(n: int, adj_masks) -> bool:
    if n == 0:
        return True
    seen = 1
    stack = [0]
    while stack:
        u = stack.pop()
        rest = adj_masks[u] & ~seen
        while rest:
            vb = rest & -rest
            rest ^= vb
            seen |= vb
            stack.append(vb.bit_length() - 1)
    return seen == (1 << n) - 1


@lru_cache(maxsize=None)
def connected_graphs_max_degree(n_max: int, d_max: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All connected graphs with at most n_max nodes and max degree at most
    d_max, one representative per isomorphism class, as adjacency-mask
    tuples grouped by node count (index 0 holds the 1-node graph)."""
    levels: list[list[tuple[int, ...]]] = [[(0,)]]
    for n in range(2, n_max + 1):
        seen: dict[tuple, tuple[int, ...]] = {}
        for masks in levels[-1]:
            degs = [bin(a).count("1") for a in masks]
            eligible = [v for v in range(n - 1) if degs[v] < d_max]
            for size in range(1, min(d_max, len(eligible)) + 1):
                for targets in combinations(eligible, size):
                    new_masks = list(masks) + [0]
                    for t in targets:
                        new_masks[t] |= 1 << (n - 1)
                        new_masks[n - 1] |= 1 << t
                    key = canonical_form(n, tuple(new_masks))
                    if key not in seen:
                        seen[key] = tuple(new_masks)
        levels.append(list(seen.values()))
    return tuple(tuple(level) for level in levels)


def masks_to_graph(masks) -> Graph:
    n = len(masks)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
    return Graph(n, edges)


def all_connected_graphs(n_max: int, d_max: int, n_min: int = 1):
    """Iterate Graph objects over all classes with n_min <= n <= n_max."""
    levels = connected_graphs_max_degree(n_max, d_max)
    for n in range(n_min, n_max + 1):
        for masks in levels[n - 1]:
            yield masks_to_graph(masks)


def count_classes(n_max: int, d_max: int) -> list[int]:
    levels = connected_graphs_max_degree(n_max, d_max)
    return [len(level) for level in levels]


def random_max_deg2_graph(n: int, stream) -> Graph:
    """A random disjoint union of paths and cycles on n nodes."""
    perm = list(range(n))
    stream.shuffle(perm)
    edges = []
    i = 0
    while i < n:
        size = min(1 + stream.randrange(6), n - i)
        chunk = perm[i:i + size]
        i += size
        for a, b in zip(chunk, chunk[1:]):
            edges.append((a, b))
        if len(chunk) >= 3 and stream.randrange(2):
            edges.append((chunk[-1], chunk[0]))
    return Graph(n, edges)
