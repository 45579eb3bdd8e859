"""k-uniform hypergraph matching: greedy, the hard gadget, and the game.

The gadget: k disjoint "vertical" edges (the maximum matching), one "top"
edge through their first nodes, k-1 "gray" edges and k-1 "black" edges
wired so that the top edge intersects every other edge exactly once, first
nodes of the first k-1 verticals have degree four, and every other node has
degree two.  An adaptive adversary relabels so that whatever first pick a
greedy priority strategy makes is the top edge; the resulting matching is
maximal of size 1 against the optimum k.

Text format: header ``p <n> <m> <k>``, then one line of k ids per edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (GraphFormatError, NonGreedyStrategyError, ParameterError,
                     TooLargeError)
from .game.items import GameView
from .game.strategies import PriorityStrategy
from .rng import RandomStream


class Hypergraph:
    """A k-uniform hypergraph: every edge has exactly k distinct nodes."""

    __slots__ = ("n", "k", "edges")

    def __init__(self, n: int, k: int, edges):
        self.n = int(n)
        self.k = int(k)
        norm = []
        seen = set()
        for e in edges:
            fs = frozenset(int(x) for x in e)
            if len(fs) != self.k:
                raise GraphFormatError(f"edge {sorted(fs)} does not have {self.k} nodes")
            if any(x < 0 or x >= self.n for x in fs):
                raise GraphFormatError("edge endpoint out of range")
            if fs in seen:
                raise GraphFormatError(f"duplicate edge {sorted(fs)}")
            seen.add(fs)
            norm.append(fs)
        self.edges = tuple(norm)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)

    def incident(self, u: int) -> list[frozenset]:
        return [e for e in self.edges if u in e]

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m} {self.k}"]
        lines += [" ".join(map(str, sorted(e))) for e in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        n = k = None
        edges = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            parts = line.split()
            if parts[0] == "p":
                n, _, k = int(parts[1]), int(parts[2]), int(parts[3])
            else:
                edges.append([int(x) for x in parts])
        if n is None:
            raise GraphFormatError("missing header")
        return cls(n, k, edges)


def _pair_index(i: int, j: int, width: int) -> int:
    """Index of pair (i, j), i < j, in the upper triangle over `width` slots."""
    return i * width - i * (i + 1) // 2 + (j - i - 1)


def gen_hyper_hard(k: int) -> tuple[Hypergraph, int]:
    """The hard gadget for k >= 3; returns (hypergraph, optimum size k).

    Node layout: vertical edge i occupies ids i*k .. i*k+k-1 with its top
    node at i*k; the (k-1)(k-2)/2 shared nodes of the black edges follow.
    """
    if k < 3:
        raise ParameterError("need k >= 3")
    top = [i * k for i in range(k)]
    verticals = [frozenset(range(i * k, (i + 1) * k)) for i in range(k)]
    e_top = frozenset(top)
    # gray edge i: top node of vertical i plus one fresh non-top node of
    # every other vertical, filled lowest-index-first per column
    gray = []
    used = [0] * k  # non-top nodes consumed per column
    for i in range(k - 1):
        members = {top[i]}
        for j in range(k):
            if j == i:
                continue
            members.add(j * k + 1 + used[j])
            used[j] += 1
        gray.append(frozenset(members))
    # leftover non-top node per column j < k-1
    v_nodes = [j * k + 1 + used[j] for j in range(k - 1)]
    kk = (k - 1) * (k - 2) // 2
    base = k * k
    black = []
    for i in range(k - 1):
        members = {v_nodes[i], top[(i + 1) % (k - 1)]}
        for j in range(k - 1):
            if j == i:
                continue
            lo, hi = min(i, j), max(i, j)
            members.add(base + _pair_index(lo, hi, k - 1))
        black.append(frozenset(members))
    h = Hypergraph(base + kk, k, verticals + [e_top] + gray + black)
    return h, k


def check_gadget_properties(h: Hypergraph, k: int) -> list[str]:
    """Structural property audit of the hard gadget; returns violations."""
    problems = []
    top = [i * k for i in range(k)]
    e_top = frozenset(top)
    for i in range(k - 1):
        if h.degree(top[i]) != 4:
            problems.append(f"top node of vertical {i} has degree {h.degree(top[i])}")
    for u in range(h.n):
        if u in set(top[:k - 1]):
            continue
        if h.degree(u) != 2:
            problems.append(f"node {u} has degree {h.degree(u)} (expected 2)")
    for a in range(h.m):
        for b in range(a + 1, h.m):
            inter = h.edges[a] & h.edges[b]
            if len(inter) > 1:
                problems.append(f"edges {a} and {b} share {len(inter)} nodes")
    for e in h.edges:
        if e != e_top and len(e & e_top) != 1:
            problems.append("top edge does not meet every edge exactly once")
    return problems


def hyper_greedy(h: Hypergraph, seed=0) -> list[frozenset]:
    """Maximal disjoint edge set by uniformly random greedy picking."""
    stream = RandomStream(seed, ("hyper-greedy",))
    covered: set[int] = set()
    matching: list[frozenset] = []
    avail = list(h.edges)
    while avail:
        e = avail[stream.randrange(len(avail))]
        matching.append(e)
        covered |= e
        avail = [f for f in avail if not (f & covered)]
    return matching


def hyper_bruteforce_optimum(h: Hypergraph) -> int:
    """Exact maximum disjoint edge set size; guarded to 24 edges."""
    if h.m > 24:
        raise TooLargeError(f"brute force guard exceeded (m={h.m})")
    edges = list(h.edges)
    best = 0

    def rec(i: int, covered: frozenset, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if i == len(edges) or count + (len(edges) - i) <= best:
            return
        if not (edges[i] & covered):
            rec(i + 1, covered | edges[i], count + 1)
        rec(i + 1, covered, count)

    rec(0, frozenset(), 0)
    return best


@dataclass(frozen=True)
class HyperDataItem:
    """A node with its incident edges, each given by its other k-1 nodes."""

    node: int
    edge_rests: tuple[frozenset, ...]

    def __post_init__(self):
        for rest in self.edge_rests:
            if self.node in rest:
                raise ParameterError("item node inside an incident edge rest")
        if len(set(self.edge_rests)) != len(self.edge_rests):
            raise ParameterError("duplicate incident edges")

    @property
    def degree(self) -> int:
        return len(self.edge_rests)

    @property
    def neighbors(self) -> tuple[int, ...]:
        return tuple(sorted(set().union(*self.edge_rests))) if self.edge_rests else ()


@dataclass
class HyperGameResult:
    matching_size: int
    optimum_size: int
    hypergraph: Hypergraph
    matching: list[frozenset]
    served: HyperDataItem

    def __iter__(self):
        return iter((self.matching_size, self.optimum_size))


def hyper_greedy_priority_game(strategy: PriorityStrategy, k: int) -> HyperGameResult:
    """One round decides everything: the adversary serves the strategy's
    preferred item shape (degree 2 or 4), relabels the gadget so the picked
    edge is the top edge, and the matching is maximal at size 1."""
    if not strategy.greedy:
        raise NonGreedyStrategyError("the hypergraph adversary requires greedy play")
    if k < 3:
        raise ParameterError("need k >= 3")
    gadget, opt = gen_hyper_hard(k)
    view = GameView(0)
    cand = []
    for d in (2, 4):
        rests = []
        start = 1
        for _ in range(d):
            rests.append(frozenset(range(start, start + k - 1)))
            start += k - 1
        cand.append(HyperDataItem(0, tuple(rests)))
    served = min(enumerate(cand), key=lambda t: (strategy.rank_key(t[1], view), t[0]))[1]
    pick = strategy.choose_edge_index(served, view) % served.degree
    top = [i * k for i in range(k)]
    u_role = top[0] if served.degree == 4 else top[k - 1]
    incident = sorted(gadget.incident(u_role), key=sorted)
    e_top = frozenset(top)
    incident.remove(e_top)
    # map roles onto served ids: u_role -> 0, picked rest -> top edge rest,
    # other rests -> the other incident edges, remaining roles -> fresh ids
    mapping = {u_role: 0}
    rest_targets = [e_top] + incident
    served_rests = [served.edge_rests[pick]] + \
        [r for i, r in enumerate(served.edge_rests) if i != pick]
    for rest, role_edge in zip(served_rests, rest_targets):
        for rid, sid in zip(sorted(role_edge - {u_role}), sorted(rest)):
            mapping[rid] = sid
    next_id = 1 + 4 * (k - 1) if served.degree == 4 else 1 + 2 * (k - 1)
    next_id = max(next_id, max(mapping.values()) + 1)
    for rid in range(gadget.n):
        if rid not in mapping:
            mapping[rid] = next_id
            next_id += 1
    relabeled = Hypergraph(next_id, k,
                           [frozenset(mapping[x] for x in e) for e in gadget.edges])
    picked_edge = frozenset({0} | served.edge_rests[pick])
    if picked_edge not in set(relabeled.edges):
        raise AssertionError("relabeling failed to realize the picked edge")
    observed = {e - {0} for e in relabeled.incident(0)}
    if observed != set(served.edge_rests):
        raise AssertionError("served item inconsistent with the final hypergraph")
    remaining = [e for e in relabeled.edges if not (e & picked_edge)]
    if remaining:
        raise AssertionError("picked edge is not maximal in the gadget")
    return HyperGameResult(1, opt, relabeled, [picked_edge], served)
