"""Mutable deletion structure with constant-time degree-bucket operations.

The node array S is partitioned into contiguous buckets of strictly
increasing degree; a doubly linked list of buckets tracks the borders, and
helper maps give each node its bucket and its position in S.  Adjacency
cells carry mirror handles (the index of the reciprocal cell in the
neighbor's segment), so removing an edge compacts both segments with a
swap-to-last in O(1).  Removing an edge moves both endpoints down one
bucket, creating or retiring buckets as needed.

Isolated nodes are not kept in any bucket: the degree-0 region is the
implicit prefix of S to the left of the first bucket.

`NaiveDegreeOracle` answers the same queries by full recomputation and is
the reference for randomized differential tests.
"""

from __future__ import annotations

from .errors import EdgeNotPresentError, EmptyGraphError, IsolatedNodeError
from .graph import Graph
from .policies import UNIFORM, TiePolicy
from .rng import RandomStream


class _Bucket:
    __slots__ = ("deg", "lo", "hi", "prev", "next")

    def __init__(self, deg, lo, hi):
        self.deg = deg
        self.lo = lo
        self.hi = hi
        self.prev = None
        self.next = None


class DynamicGraph:
    """Deletion-only view of a Graph supporting O(1) min-degree selection,
    uniform neighbor sampling, and edge removal."""

    __slots__ = ("g", "n", "start", "nbr", "mirror", "cell_eid", "deg",
                 "S", "pos", "bucket_of", "head", "live_edges")

    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.start = g.indptr  # shared; never mutated
        self.nbr = g.nbr.tolist()
        self.mirror = g.mirror.tolist()
        self.cell_eid = g.cell_eid.tolist()
        self.deg = g.degrees().tolist()
        self.live_edges = g.m
        self._build_buckets()

    def _build_buckets(self) -> None:
        n = self.n
        deg = self.deg
        order = sorted(range(n), key=lambda u: deg[u])
        self.S = order
        self.pos = [0] * n
        for i, u in enumerate(order):
            self.pos[u] = i
        self.bucket_of = [None] * n
        self.head = None
        tail = None
        i = 0
        while i < n:
            d = deg[order[i]]
            j = i
            while j < n and deg[order[j]] == d:
                j += 1
            if d > 0:
                b = _Bucket(d, i, j)
                for k in range(i, j):
                    self.bucket_of[order[k]] = b
                if tail is None:
                    self.head = b
                else:
                    tail.next = b
                    b.prev = tail
                tail = b
            i = j

    # -- selection ----------------------------------------------------

    def min_degree(self) -> int:
        if self.head is None:
            raise EmptyGraphError("no node has positive degree")
        return self.head.deg

    def min_degree_nodes(self) -> list[int]:
        if self.head is None:
            raise EmptyGraphError("no node has positive degree")
        b = self.head
        return self.S[b.lo:b.hi]

    def min_degree_node(self, policy: TiePolicy = UNIFORM,
                        stream: RandomStream | None = None) -> int:
        if self.head is None:
            raise EmptyGraphError("no node has positive degree")
        b = self.head
        width = b.hi - b.lo
        if policy.kind == "uniform":
            return self.S[b.lo + stream.randrange(width)]
        if policy.kind == "index":
            return self.S[b.lo + policy.index % width]
        if policy.kind == "lowest":
            return min(self.S[b.lo:b.hi])
        return policy.fn(self.S[b.lo:b.hi])

    def random_live_node(self, stream: RandomStream) -> int:
        """Uniform over all nodes of positive degree (the live span of S)."""
        if self.head is None:
            raise EmptyGraphError("no node has positive degree")
        return self.S[stream.randrange(self.n - self.head.lo) + self.head.lo]

    def live_neighbors(self, u: int) -> list[int]:
        s = self.start[u]
        return self.nbr[s:s + self.deg[u]]

    def live_cells(self, u: int) -> range:
        s = self.start[u]
        return range(s, s + self.deg[u])

    def random_neighbor(self, u: int, policy: TiePolicy = UNIFORM,
                        stream: RandomStream | None = None) -> int:
        d = self.deg[u]
        if d == 0:
            raise IsolatedNodeError(f"node {u} has no live neighbors")
        s = self.start[u]
        if policy.kind == "uniform":
            return self.nbr[s + stream.randrange(d)]
        if policy.kind == "index":
            return self.nbr[s + policy.index % d]
        if policy.kind == "lowest":
            return min(self.nbr[s:s + d])
        return policy.fn(self.nbr[s:s + d])

    # -- mutation -----------------------------------------------------

    def _bucket_down(self, x: int) -> None:
        """Move x one bucket down after its degree was decremented."""
        b = self.bucket_of[x]
        lo = b.lo
        px = self.pos[x]
        if px != lo:
            y = self.S[lo]
            self.S[lo], self.S[px] = x, y
            self.pos[x], self.pos[y] = lo, px
        b.lo = lo + 1
        d_new = b.deg - 1
        left = b.prev
        if d_new == 0:
            self.bucket_of[x] = None
        elif left is not None and left.deg == d_new:
            left.hi += 1
            self.bucket_of[x] = left
        else:
            nb = _Bucket(d_new, lo, lo + 1)
            nb.prev = left
            nb.next = b
            if left is not None:
                left.next = nb
            else:
                self.head = nb
            b.prev = nb
            self.bucket_of[x] = nb
        if b.lo == b.hi:
            if b.prev is not None:
                b.prev.next = b.next
            else:
                self.head = b.next
            if b.next is not None:
                b.next.prev = b.prev

    def _delete_cell(self, u: int, cell: int) -> int:
        """Remove the edge stored at `cell` of u's segment; returns the other
        endpoint.  O(1): swap-with-last compaction on both sides."""
        w = self.nbr[cell]
        cw = self.mirror[cell]
        last_u = self.start[u] + self.deg[u] - 1
        if cell != last_u:
            self.nbr[cell] = self.nbr[last_u]
            self.mirror[cell] = self.mirror[last_u]
            self.cell_eid[cell] = self.cell_eid[last_u]
            self.mirror[self.mirror[cell]] = cell
        self.deg[u] -= 1
        self._bucket_down(u)
        last_w = self.start[w] + self.deg[w] - 1
        if cw != last_w:
            self.nbr[cw] = self.nbr[last_w]
            self.mirror[cw] = self.mirror[last_w]
            self.cell_eid[cw] = self.cell_eid[last_w]
            self.mirror[self.mirror[cw]] = cw
        self.deg[w] -= 1
        self._bucket_down(w)
        self.live_edges -= 1
        return w

    def delete_edge(self, u: int, v: int) -> None:
        """Remove a specific live edge (locates v in u's segment by scan)."""
        s = self.start[u]
        for cell in range(s, s + self.deg[u]):
            if self.nbr[cell] == v:
                self._delete_cell(u, cell)
                return
        raise EdgeNotPresentError(f"edge ({u}, {v}) is not live")

    def remove_matched_pair(self, u: int, v: int) -> list[tuple[int, int, int, bool]]:
        """Delete u, v, and all their incident edges.

        Returns the removed edges as (x, y, eid, is_matched_edge) with the
        matched edge (u, v) flagged.  Raises if (u, v) is not live.
        """
        s = self.start[u]
        found = False
        for cell in range(s, s + self.deg[u]):
            if self.nbr[cell] == v:
                found = True
                break
        if not found:
            raise EdgeNotPresentError(f"edge ({u}, {v}) is not live")
        removed = []
        while self.deg[u]:
            cell = self.start[u]
            w = self.nbr[cell]
            eid = self.cell_eid[cell]
            removed.append((u, w, eid, w == v))
            self._delete_cell(u, cell)
        while self.deg[v]:
            cell = self.start[v]
            w = self.nbr[cell]
            eid = self.cell_eid[cell]
            removed.append((v, w, eid, False))
            self._delete_cell(v, cell)
        return removed

    def drain(self) -> int:
        """Delete every remaining edge one at a time; returns the count."""
        count = 0
        while self.head is not None:
            u = self.S[self.head.lo]
            self._delete_cell(u, self.start[u])
            count += 1
        return count

    # -- inspection ----------------------------------------------------

    def has_live_edges(self) -> bool:
        return self.head is not None

    def degree(self, u: int) -> int:
        return self.deg[u]

    def bucket_degrees(self) -> list[int]:
        out = []
        b = self.head
        while b is not None:
            out.append(b.deg)
            b = b.next
        return out

    def bucket_contents(self) -> dict[int, set[int]]:
        out = {}
        b = self.head
        while b is not None:
            out[b.deg] = set(self.S[b.lo:b.hi])
            b = b.next
        return out

    def check_invariants(self) -> None:
        """Assert every structure invariant; test/debug use only."""
        seen = set()
        prev_deg = 0
        prev_hi = None
        b = self.head
        while b is not None:
            assert b.lo < b.hi, "empty bucket in list"
            assert b.deg > prev_deg, "bucket degrees not strictly increasing"
            if prev_hi is not None:
                assert b.lo == prev_hi, "buckets not contiguous"
            for i in range(b.lo, b.hi):
                u = self.S[i]
                assert u not in seen, "node appears twice in buckets"
                seen.add(u)
                assert self.deg[u] == b.deg, "node in wrong bucket"
                assert self.pos[u] == i, "position map stale"
                assert self.bucket_of[u] is b, "bucket map stale"
            prev_deg = b.deg
            prev_hi = b.hi
            b = b.next
        live_total = 0
        for u in range(self.n):
            if self.deg[u] > 0:
                assert u in seen, f"live node {u} missing from buckets"
            else:
                assert self.bucket_of[u] is None
            for cell in self.live_cells(u):
                assert self.mirror[self.mirror[cell]] == cell, "mirror not involutive"
                w = self.nbr[cell]
                assert self.nbr[self.mirror[cell]] == u, "mirror points to wrong node"
                assert self.start[w] <= self.mirror[cell] < self.start[w] + self.deg[w], \
                    "mirror lands outside live segment"
            live_total += self.deg[u]
        assert live_total == 2 * self.live_edges


class NaiveDegreeOracle:
    """Slow reference structure: every query recomputes from the edge set."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.edges = {(min(u, v), max(u, v)) for u, v in g.edges()}

    def _degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)

    def live_neighbors(self, u: int) -> set[int]:
        return {v if w == u else w for w, v in self.edges if u in (w, v)}

    def min_degree(self) -> int:
        degs = [d for d in self._degrees() if d > 0]
        if not degs:
            raise EmptyGraphError("no node has positive degree")
        return min(degs)

    def min_degree_nodes(self) -> set[int]:
        deg = self._degrees()
        lo = self.min_degree()
        return {u for u in range(self.n) if deg[u] == lo}

    def delete_edge(self, u: int, v: int) -> None:
        key = (min(u, v), max(u, v))
        if key not in self.edges:
            raise EdgeNotPresentError(f"edge ({u}, {v}) is not live")
        self.edges.remove(key)

    def remove_matched_pair(self, u: int, v: int) -> set[tuple[int, int]]:
        key = (min(u, v), max(u, v))
        if key not in self.edges:
            raise EdgeNotPresentError(f"edge ({u}, {v}) is not live")
        gone = {e for e in self.edges if u in e or v in e}
        self.edges -= gone
        return gone

    def has_live_edges(self) -> bool:
        return bool(self.edges)
