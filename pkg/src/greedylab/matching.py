"""Matchings and matching verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .errors import GreedyLabError
from .graph import Graph


class Matching:
    """A set of node-disjoint unordered pairs with a lazy mate map."""

    __slots__ = ("pairs", "_mate")

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        norm = [(min(u, v), max(u, v)) for u, v in pairs]
        self.pairs = tuple(sorted(norm))
        self._mate = None
        seen: set[int] = set()
        for u, v in self.pairs:
            if u == v:
                raise GreedyLabError("a matched pair cannot repeat a node")
            if u in seen or v in seen:
                raise GreedyLabError(f"node reused across pairs ({u}, {v})")
            seen.add(u)
            seen.add(v)

    @property
    def size(self) -> int:
        return len(self.pairs)

    def mate_map(self) -> dict[int, int]:
        if self._mate is None:
            mate = {}
            for u, v in self.pairs:
                mate[u] = v
                mate[v] = u
            self._mate = mate
        return self._mate

    def mate(self, u: int) -> int | None:
        return self.mate_map().get(u)

    def covers(self, u: int) -> bool:
        return u in self.mate_map()

    def covered_nodes(self) -> set[int]:
        return set(self.mate_map())

    def as_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.pairs)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return (min(u, v), max(u, v)) in self.as_set()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matching) and self.pairs == other.pairs

    def __hash__(self) -> int:
        return hash(self.pairs)

    def __repr__(self):
        return f"Matching(size={self.size})"


EMPTY_MATCHING = Matching([])


@dataclass
class MatchReport:
    valid: bool
    maximal: bool
    size: int
    problems: list[str] = field(default_factory=list)


def verify_matching(g: Graph, matching: Matching) -> MatchReport:
    """Report validity (disjoint pairs, all edges of g) and maximality
    (no remaining edge joins two uncovered nodes)."""
    problems = []
    valid = True
    for u, v in matching:
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            problems.append(f"pair ({u}, {v}) is not an edge of the graph")
            valid = False
    # Disjointness was enforced at construction; re-check defensively.
    covered = np.zeros(g.n, dtype=bool)
    for u, v in matching:
        if u < g.n and covered[u] or v < g.n and covered[v]:
            problems.append(f"pair ({u}, {v}) shares a node with another pair")
            valid = False
        if u < g.n:
            covered[u] = True
        if v < g.n:
            covered[v] = True
    maximal = True
    if g.m:
        e = g.edge_array
        free = ~covered[e[:, 0]] & ~covered[e[:, 1]]
        if free.any():
            idx = int(np.flatnonzero(free)[0])
            problems.append(
                f"not maximal: edge ({int(e[idx, 0])}, {int(e[idx, 1])}) joins two uncovered nodes")
            maximal = False
    return MatchReport(valid=valid, maximal=maximal, size=matching.size, problems=problems)
