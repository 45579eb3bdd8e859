"""Adaptive adversaries for the lower-bound constructions.

Both adversaries build their graph on the fly.  Identities of nodes the
strategy has never seen in a served item are interchangeable, so after each
decision the adversary may rebind such ids to roles (implemented as an id
transposition over all internal state); every served item stays true in the
final graph, which is what the consistency checker verifies.
"""

from __future__ import annotations

from ..errors import GreedyLabError, ParameterError
from ..graph import Graph
from ..matching import Matching
from ..instances import FIG2_EDGES, FIG2_OPT
from .engine import Adversary, matchable_nodes
from .items import DataItem


class Thm4Adversary(Adversary):
    """Serves a degree-2 or degree-3 item first, then commits to one of two
    6-node graphs with perfect matchings, chosen so that any play ends with
    at most 2 of the optimum 3 edges."""

    requires_greedy = False

    # roles: u, v, w, z, b, c
    _FIG3_EDGES = ((1, 2), (1, 0), (0, 2), (0, 3), (3, 4), (3, 5), (4, 5))
    _FIG3_OPT = ((1, 2), (0, 3), (4, 5))

    def start(self, stream):
        self.graph: Graph | None = None
        self.opt_pairs: list[tuple[int, int]] | None = None
        self.committed_kind: str | None = None

    def offer(self, view):
        if self.graph is None:
            return [DataItem(0, (1, 2)), DataItem(0, (1, 2, 3))]
        nodes = matchable_nodes(self.graph, set(view.matched), set(view.isolated))
        return [DataItem(u, tuple(self.graph.neighbors(u))) for u in sorted(nodes)]

    def matchable_mates(self, item, view):
        if self.graph is None:
            return list(item.neighbors)
        dead = view.matched | view.isolated
        return [v for v in item.neighbors if v not in dead]

    def apply(self, item, mate, view):
        if self.graph is not None:
            return
        # Bind the picked mate to the role whose match caps the outcome.
        others = [x for x in item.neighbors if x != mate]
        if mate is None:
            ids = [0] + list(item.neighbors)
        else:
            ids = [0, mate] + others
        if item.degree == 2:
            role_of = {0: ids[0], 1: ids[1], 2: ids[2], 3: 3, 4: 4, 5: 5}
            edges = [(role_of[x], role_of[y]) for x, y in FIG2_EDGES]
            self.opt_pairs = [(role_of[x], role_of[y]) for x, y in FIG2_OPT]
            self.committed_kind = "fig2"
        else:
            role_of = {0: ids[0], 1: ids[1], 2: ids[2], 3: ids[3], 4: 4, 5: 5}
            edges = [(role_of[x], role_of[y]) for x, y in self._FIG3_EDGES]
            self.opt_pairs = [(role_of[x], role_of[y]) for x, y in self._FIG3_OPT]
            self.committed_kind = "fig3"
        self.graph = Graph(6, edges)

    def finish(self, view):
        if self.graph is None:
            raise GreedyLabError("game never started")
        return self.graph, Matching(self.opt_pairs), {"kind": [self.committed_kind]}


def thm4_adversary() -> Thm4Adversary:
    return Thm4Adversary()


class Thm6Adversary(Adversary):
    """Degree-capped adversary forcing matching size maxdeg-1 against an
    optimum of 2*maxdeg-3 for every greedy strategy.

    Regular game: maxdeg-3 rounds, each served from a menu of three item
    shapes (a disposable high-degree component; a triangle hooked to the
    hidden center; a triangle additionally wired to an already-matched
    hook node).  Endgame: two rounds inside the 6-node center, arranged so
    the center edge (a, b) is always matched first.
    """

    requires_greedy = True

    def __init__(self, delta: int):
        if delta < 3:
            raise ParameterError("need delta >= 3")
        self.delta = delta
        self.s = delta - 3

    def start(self, stream):
        self.A, self.B, self.C, self.D, self.P, self.Q = range(6)
        self.adj: dict[int, set[int]] = {i: set() for i in range(6)}
        for x, y in ((self.A, self.B), (self.A, self.P), (self.A, self.Q),
                     (self.C, self.P), (self.C, self.Q), (self.C, self.D),
                     (self.B, self.D)):
            self._edge(x, y)
        self.opt_pairs = [(self.A, self.P), (self.B, self.D), (self.C, self.Q)]
        self.next_id = 6
        self.r_nodes: list[int] = []
        self.groups = {"l": [], "m": [], "r": [], "u": [], "t1": []}
        self.rounds_done = 0
        self.phase = "regular" if self.s > 0 else "endgame1"

    def _edge(self, x: int, y: int) -> None:
        self.adj.setdefault(x, set()).add(y)
        self.adj.setdefault(y, set()).add(x)

    def _alloc(self, k: int) -> list[int]:
        ids = list(range(self.next_id, self.next_id + k))
        self.next_id += k
        for i in ids:
            self.adj.setdefault(i, set())
        return ids

    def _transpose(self, i: int, j: int) -> None:
        """Exchange the identities of two nodes across all internal state."""
        if i == j:
            return
        def pi(t: int) -> int:
            return j if t == i else i if t == j else t
        new_adj = {}
        for x, ys in self.adj.items():
            new_adj[pi(x)] = {pi(y) for y in ys}
        self.adj = new_adj
        self.opt_pairs = [(pi(x), pi(y)) for x, y in self.opt_pairs]
        self.r_nodes = [pi(x) for x in self.r_nodes]
        for key in self.groups:
            self.groups[key] = [pi(x) for x in self.groups[key]]
        self.A, self.B, self.C, self.D, self.P, self.Q = (
            pi(self.A), pi(self.B), pi(self.C), pi(self.D), pi(self.P), pi(self.Q))

    # -- offers -------------------------------------------------------

    def _regular_menu(self) -> list[DataItem]:
        base = self.next_id
        menu = [DataItem(base, (base + 1, base + 2))]
        for r in self.r_nodes:
            if len(self.adj[r]) <= self.delta - 2:
                menu.append(DataItem(base, (base + 1, base + 2, r)))
        for d in range(3, self.delta + 1):
            menu.append(DataItem(base, tuple(range(base + 1, base + 1 + d))))
        return menu

    def _endgame1_menu(self) -> list[DataItem]:
        menu = [DataItem(self.B, tuple(self.adj[self.B]))]
        for r in self.r_nodes:
            if len(self.adj[r]) <= self.delta - 1:
                menu.append(DataItem(self.B, tuple(self.adj[self.B]) + (r,)))
        menu.append(DataItem(self.A, tuple(self.adj[self.A])))
        return menu

    def offer(self, view):
        if self.phase == "regular":
            return self._regular_menu()
        if self.phase == "endgame1":
            return self._endgame1_menu()
        g = self._current_graph()
        nodes = matchable_nodes(g, set(view.matched), set(view.isolated))
        return [DataItem(u, tuple(g.neighbors(u))) for u in sorted(nodes)]

    def matchable_mates(self, item, view):
        dead = view.matched | view.isolated
        return [v for v in item.neighbors if v not in dead]

    # -- decisions ----------------------------------------------------

    def apply(self, item, mate, view):
        if mate is None:
            raise GreedyLabError("greedy strategies never isolate")
        if self.phase == "regular":
            self._apply_regular(item, mate)
            self.rounds_done += 1
            if self.rounds_done == self.s:
                self.phase = "endgame1"
        elif self.phase == "endgame1":
            self._apply_endgame1(item, mate)
            self.phase = "endgame2"

    def _apply_regular(self, item, mate):
        base = item.node
        known = [x for x in item.neighbors if x < base]
        fresh = [x for x in item.neighbors if x > base]
        self._alloc(1 + len(fresh))
        if known:
            # triangle wired to hook node known[0] for consistency
            r_j = known[0]
            self._edge(base, r_j)
        if len(fresh) == 2 or known:
            m_i = base
            r_i = mate
            l_i = next(x for x in fresh if x != mate)
            u_i = self._alloc(1)[0]
            self._edge(l_i, m_i)
            self._edge(l_i, r_i)
            self._edge(m_i, r_i)
            self._edge(r_i, u_i)
            self._edge(u_i, self.A)
            self._edge(u_i, self.C)
            self.opt_pairs += [(l_i, m_i), (r_i, u_i)]
            self.r_nodes.append(r_i)
            self.groups["m"].append(m_i)
            self.groups["r"].append(r_i)
            self.groups["l"].append(l_i)
            self.groups["u"].append(u_i)
        else:
            # disposable component: item node and its mate adjacent to all
            v = base
            for x in fresh:
                self._edge(v, x)
            for x in fresh:
                if x != mate:
                    self._edge(mate, x)
            others = [x for x in fresh if x != mate]
            self.opt_pairs += [(v, others[0]), (mate, others[1])]
            self.groups["t1"] += [v] + list(fresh)

    def _apply_endgame1(self, item, mate):
        if item.node == self.A:
            if mate != self.B:
                self._transpose(mate, self.B)
        else:
            known = [x for x in item.neighbors if x not in (self.A, self.D)]
            if known:
                self._edge(self.B, known[0])
            if mate != self.A:
                self._transpose(mate, self.A)

    # -- finalization ---------------------------------------------------

    def _current_graph(self) -> Graph:
        edges = [(x, y) for x in self.adj for y in self.adj[x] if x < y]
        return Graph(self.next_id, sorted(edges))

    def finish(self, view):
        g = self._current_graph()
        labels = {"center": [self.A, self.B, self.C, self.D, self.P, self.Q]}
        labels.update({k: sorted(v) for k, v in self.groups.items() if v})
        return g, Matching(self.opt_pairs), labels


def thm6_adversary(delta: int) -> Thm6Adversary:
    return Thm6Adversary(delta)
