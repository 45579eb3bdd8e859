"""Immutable simple undirected graphs with an adjacency-array representation.

Nodes are dense integers 0..n-1.  The adjacency is kept in CSR form
(indptr / nbr) together with a mirror array: the cell holding neighbor v in
u's segment stores the index of the reciprocal cell in v's segment.  The
mirror array is what makes constant-time edge deletion possible in the
mutable structure built on top of this (see `dynamic`).

Text format: a header line ``p <n> <m>``, then one line ``e <u> <v>`` per
edge with 0-based ids; lines starting with ``c`` are comments.  Round-trips
are exact (edge order and orientation preserved).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GraphFormatError


class Graph:
    """A validated simple undirected graph.

    Treat instances as immutable: all arrays are created once and shared
    freely afterwards (the mutable deletion structure copies what it needs).
    """

    __slots__ = ("n", "m", "edge_array", "indptr", "nbr", "mirror", "cell_eid",
                 "_edge_codes")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] | np.ndarray):
        edge_array = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                                dtype=np.int64)
        if edge_array.size == 0:
            edge_array = edge_array.reshape(0, 2)
        if edge_array.ndim != 2 or edge_array.shape[1] != 2:
            raise GraphFormatError("edges must be pairs of node ids")
        self.n = int(n)
        self.m = int(edge_array.shape[0])
        if self.n < 0:
            raise GraphFormatError("node count must be nonnegative")
        self._validate(edge_array)
        self.edge_array = edge_array
        self._build_adjacency()
        self._edge_codes = None

    def _validate(self, e: np.ndarray) -> None:
        if e.shape[0] == 0:
            return
        if e.min() < 0 or e.max() >= self.n:
            raise GraphFormatError("edge endpoint out of range")
        if (e[:, 0] == e[:, 1]).any():
            raise GraphFormatError("self-loops are not allowed")
        codes = np.minimum(e[:, 0], e[:, 1]) * self.n + np.maximum(e[:, 0], e[:, 1])
        if np.unique(codes).size != e.shape[0]:
            raise GraphFormatError("duplicate edges are not allowed")

    def _build_adjacency(self) -> None:
        n, m = self.n, self.m
        e = self.edge_array
        src = np.concatenate([e[:, 0], e[:, 1]])
        dst = np.concatenate([e[:, 1], e[:, 0]])
        order = np.argsort(src, kind="stable")
        counts = np.bincount(src, minlength=n) if m else np.zeros(n, dtype=np.int64)
        self.indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.indptr[1:])
        self.nbr = dst[order].astype(np.int32)
        # pos[t] = final cell of half-edge t; the partner of half-edge t is
        # t+m (mod 2m), which yields the mirror in one vectorized gather.
        pos = np.empty(2 * m, dtype=np.int64)
        pos[order] = np.arange(2 * m)
        partner = (np.arange(2 * m) + m) % (2 * m) if m else np.empty(0, dtype=np.int64)
        mirror = np.empty(2 * m, dtype=np.int64)
        mirror[pos] = pos[partner]
        self.mirror = mirror.astype(np.int64)
        eid = np.concatenate([np.arange(m), np.arange(m)]) if m else np.empty(0, dtype=np.int64)
        cell_eid = np.empty(2 * m, dtype=np.int64)
        cell_eid[pos] = eid
        self.cell_eid = cell_eid.astype(np.int32)

    # -- queries ----------------------------------------------------

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def neighbors(self, u: int) -> list[int]:
        return self.nbr[self.indptr[u]:self.indptr[u + 1]].tolist()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, v in self.edge_array:
            yield int(u), int(v)

    def edge(self, eid: int) -> tuple[int, int]:
        u, v = self.edge_array[eid]
        return int(u), int(v)

    def has_edge(self, u: int, v: int) -> bool:
        if self._edge_codes is None:
            e = self.edge_array
            codes = np.minimum(e[:, 0], e[:, 1]) * self.n + np.maximum(e[:, 0], e[:, 1])
            self._edge_codes = set(codes.tolist())
        a, b = (u, v) if u < v else (v, u)
        return a * self.n + b in self._edge_codes

    def is_bipartite_with(self, side_of: Sequence[int]) -> bool:
        """Check that no edge joins two nodes with the same side label."""
        s = np.asarray(side_of)
        e = self.edge_array
        return bool((s[e[:, 0]] != s[e[:, 1]]).all()) if self.m else True

    def two_coloring(self) -> list[int] | None:
        """BFS 2-coloring; None if an odd cycle exists."""
        color = [-1] * self.n
        for start in range(self.n):
            if color[start] != -1:
                continue
            color[start] = 0
            queue = [start]
            while queue:
                u = queue.pop()
                cu = color[u]
                for v in self.neighbors(u):
                    if color[v] == -1:
                        color[v] = 1 - cu
                        queue.append(v)
                    elif color[v] == cu:
                        return None
        return color

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- text format --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m}"]
        lines.extend(f"e {u} {v}" for u, v in self.edges())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                if n is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: header must be 'p <n> <m>'")
                n = int(parts[1])
                declared_m = int(parts[2])
            elif parts[0] == "e":
                if n is None:
                    raise GraphFormatError(f"line {lineno}: edge before header")
                if len(parts) != 3:
                    raise GraphFormatError(f"line {lineno}: edge must be 'e <u> <v>'")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
        if n is None:
            raise GraphFormatError("missing 'p' header line")
        if len(edges) != declared_m:
            raise GraphFormatError(f"header declares {declared_m} edges, found {len(edges)}")
        return cls(n, edges)


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphFormatError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
