"""Game engine, transcripts, and the transcript consistency checker.

One game: the adversary offers the data items it can legally serve, the
engine serves the strategy's most-preferred offer, the strategy decides
irrevocably, and the adversary commits graph structure.  Rank ties are
broken by a per-game seeded draw: the bundled strategies order item shapes,
and a shape-level preference corresponds to a family of total orders over
concrete items, of which the engine realizes one at random.  Serving this
way keeps the served item independent of the labels, which is what the
relabeling-distribution evaluation relies on.

A finished transcript carries the final graph and is checkable: every
revealed item must equal its node's true neighborhood, the node must have
been matchable when served, and nothing matchable may have ranked strictly
before the served item under that round's ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import GreedyLabError, NonGreedyStrategyError
from ..graph import Graph
from ..matching import Matching
from ..rng import RandomStream
from .items import DataItem, GameView
from .strategies import PriorityStrategy


def matchable_nodes(g: Graph, matched: set[int], isolated: set[int]) -> set[int]:
    """Nodes that are neither matched nor isolated and still have a
    matchable neighbor."""
    dead = matched | isolated
    out = set()
    for u in range(g.n):
        if u in dead:
            continue
        if any(v not in dead for v in g.neighbors(u)):
            out.add(u)
    return out


class Adversary:
    requires_greedy = False

    def start(self, stream: RandomStream) -> None:
        pass

    def offer(self, view: GameView) -> list[DataItem]:
        raise NotImplementedError

    def matchable_mates(self, item: DataItem, view: GameView) -> list[int]:
        return [v for v in item.neighbors
                if v not in view.matched and v not in view.isolated]

    def apply(self, item: DataItem, mate: int | None, view: GameView) -> None:
        pass

    def finish(self, view: GameView) -> tuple[Graph, Matching | None, dict | None]:
        raise NotImplementedError


class StaticAdversary(Adversary):
    """Plays a fixed graph: serves true items of matchable nodes."""

    def __init__(self, g: Graph):
        self.g = g

    def offer(self, view):
        nodes = matchable_nodes(self.g, set(view.matched), set(view.isolated))
        return [DataItem(u, tuple(self.g.neighbors(u))) for u in sorted(nodes)]

    def matchable_mates(self, item, view):
        dead = view.matched | view.isolated
        alive = [v for v in item.neighbors if v not in dead]
        nodes = matchable_nodes(self.g, set(view.matched), set(view.isolated))
        return [v for v in alive if v in nodes]

    def finish(self, view):
        return self.g, None, None


@dataclass
class Round:
    key: tuple
    item: DataItem
    mate: int | None


@dataclass
class GameTranscript:
    strategy_name: str
    seed: int
    rounds: list[Round]
    final_graph: Graph
    matching: Matching
    opt_witness: Matching | None = None
    labels: dict | None = None
    strategy: PriorityStrategy | None = field(default=None, repr=False)

    def to_json(self) -> str:
        return json.dumps({
            "strategy": self.strategy_name,
            "seed": self.seed,
            "rounds": [{
                "key": [str(k) for k in r.key],
                "node": r.item.node,
                "neighbors": list(r.item.neighbors),
                "mate": r.mate,
            } for r in self.rounds],
            "graph": self.final_graph.to_text(),
            "matching": [list(p) for p in self.matching],
        }, indent=1)


def play(strategy: PriorityStrategy, adversary: Adversary,
         seed: int = 0) -> GameTranscript:
    """Run the game to completion and return a checkable transcript."""
    if adversary.requires_greedy and not strategy.greedy:
        raise NonGreedyStrategyError(
            f"{strategy.name} may isolate; this adversary requires greedy play")
    stream = RandomStream(seed, ("priority-game",))
    adversary.start(stream)
    view = GameView(0)
    rounds: list[Round] = []
    pairs: list[tuple[int, int]] = []
    while True:
        offers = adversary.offer(view)
        if not offers:
            break
        draws = [stream.random() for _ in offers]
        ranked = min(enumerate(offers),
                     key=lambda t: (strategy.rank_key(t[1], view), draws[t[0]]))
        item = ranked[1]
        key = strategy.rank_key(item, view)
        mates = adversary.matchable_mates(item, view)
        if not mates:
            raise GreedyLabError("adversary served an unmatchable node")
        mate = strategy.choose_mate(item, view, list(mates))
        if mate is None:
            if strategy.greedy:
                raise NonGreedyStrategyError(
                    f"greedy strategy {strategy.name} tried to isolate")
        elif mate not in mates:
            raise GreedyLabError(f"strategy chose non-matchable mate {mate}")
        adversary.apply(item, mate, view)
        rounds.append(Round(tuple(key), item, mate))
        if mate is not None:
            pairs.append((item.node, mate))
        view = view.advance(item, mate)
    g, opt_witness, labels = adversary.finish(view)
    return GameTranscript(strategy.name, seed, rounds, g, Matching(pairs),
                          opt_witness, labels, strategy)


@dataclass
class ConsistencyReport:
    ok: bool
    problems: list[str]


def check_consistency(transcript: GameTranscript,
                      strategy: PriorityStrategy | None = None
                      ) -> ConsistencyReport:
    """Verify a finished transcript against its final graph.

    Structural checks always run: each served node was matchable when
    served, its item equals its true neighborhood, and the decision was
    legal.  If the strategy (or its stored reference) is available, also
    check serve-order minimality: no matchable node's true item may rank
    strictly before the served item under that round's key.
    """
    g = transcript.final_graph
    strategy = strategy or transcript.strategy
    problems: list[str] = []
    matched: set[int] = set()
    isolated: set[int] = set()
    view = GameView(0)
    for i, r in enumerate(transcript.rounds):
        true_item = DataItem(r.item.node, tuple(g.neighbors(r.item.node)))
        if true_item.neighbors != r.item.neighbors:
            problems.append(
                f"round {i}: revealed neighborhood of node {r.item.node} "
                f"{r.item.neighbors} differs from final graph {true_item.neighbors}")
        avail = matchable_nodes(g, matched, isolated)
        if r.item.node not in avail:
            problems.append(f"round {i}: node {r.item.node} was not matchable")
        if strategy is not None:
            served_key = strategy.rank_key(r.item, view)
            for u in sorted(avail):
                other = DataItem(u, tuple(g.neighbors(u)))
                if strategy.rank_key(other, view) < served_key:
                    problems.append(
                        f"round {i}: matchable node {u} ranks before the served item")
                    break
        if r.mate is None:
            isolated.add(r.item.node)
        else:
            if r.mate in matched or r.mate in isolated:
                problems.append(f"round {i}: mate {r.mate} was not matchable")
            if not g.has_edge(r.item.node, r.mate):
                problems.append(
                    f"round {i}: matched pair ({r.item.node}, {r.mate}) is not an edge")
            matched.update((r.item.node, r.mate))
        view = view.advance(r.item, r.mate)
    if matchable_nodes(g, matched, isolated):
        problems.append("game ended with matchable nodes remaining")
    recorded = {(min(a, b), max(a, b))
                for a, b in ((r.item.node, r.mate) for r in transcript.rounds
                             if r.mate is not None)}
    if recorded != set(transcript.matching.pairs):
        problems.append("final matching does not equal the recorded decisions")
    return ConsistencyReport(ok=not problems, problems=problems)
