"""The bundled strategy zoo.

A strategy submits an ordering over all possible data items; the engine
realizes it as a rank key queried per candidate item.  The bundled
strategies are label-invariant: keys depend only on an item's degree, how
many of its nodes are already known, and its live degree under the current
view.  That matches what the adversaries of the lower-bound constructions
can distinguish, and it is what makes adversary-side relabeling of unknown
nodes sound.

Strategies flagged greedy never isolate; non-greedy ones may.
"""

from __future__ import annotations

from ..errors import ParameterError
from ..rng import derive_key
from .items import DataItem, GameView


class PriorityStrategy:
    name = "base"
    greedy = True

    def rank_key(self, item: DataItem, view: GameView):
        raise NotImplementedError

    def choose_mate(self, item: DataItem, view: GameView,
                    matchable: list[int]) -> int | None:
        """Return the chosen mate, or None to isolate (non-greedy only)."""
        return min(matchable)

    def choose_edge_index(self, item, view: GameView) -> int:
        """For hypergraph items: which incident edge to pick."""
        return 0

    def __repr__(self):
        return f"<strategy {self.name}>"


class MinDegreeFirst(PriorityStrategy):
    name = "min-degree-first"

    def rank_key(self, item, view):
        return (item.degree,)


class MaxDegreeFirst(PriorityStrategy):
    name = "max-degree-first"

    def rank_key(self, item, view):
        return (-item.degree,)


class LexicographicShape(PriorityStrategy):
    """Orders item shapes lexicographically by (degree, known-neighbor count)."""

    name = "lexicographic"

    def rank_key(self, item, view):
        return (item.degree, view.n_known(item))


class MinLiveDegreeFirst(PriorityStrategy):
    """Deterministic minimum-degree matching as a priority strategy: prefers
    the item whose node has the fewest not-yet-removed neighbors."""

    name = "mingreedy-det"

    def rank_key(self, item, view):
        return (view.live_degree(item), item.degree, view.n_known(item))


class RandomOrder(PriorityStrategy):
    """Seeded pseudo-random shape preference, fresh each round (deterministic
    given the seed, so transcripts replay exactly)."""

    name = "random-order"

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.name = f"random-order:{seed}"

    def rank_key(self, item, view):
        return (derive_key(self.seed, view.round_no, item.degree,
                           view.n_known(item)),)


class IsolateEverything(PriorityStrategy):
    """Non-greedy pathological baseline: isolates every served node."""

    name = "isolate-all"
    greedy = False

    def rank_key(self, item, view):
        return (item.degree,)

    def choose_mate(self, item, view, matchable):
        return None


class IsolateFirstThenGreedy(PriorityStrategy):
    """Isolates the first served node, then plays min-live-degree greedily."""

    name = "isolate-first"
    greedy = False

    def rank_key(self, item, view):
        return (view.live_degree(item), item.degree)

    def choose_mate(self, item, view, matchable):
        if view.round_no == 0:
            return None
        return min(matchable)


class DegreeTwoFirstOptimal(PriorityStrategy):
    """Requests a degree-2 item first, then completes by minimum live degree.

    On the uniform relabeling distribution of the 6-node gadget this is the
    best deterministic play: the first mate is right half the time, and a
    right first pick is always completed to a maximum matching.
    """

    name = "yao-optimal"

    def rank_key(self, item, view):
        if view.round_no == 0:
            return (0 if item.degree == 2 else 1, item.degree)
        return (view.live_degree(item), item.degree)


class DegreeThreeFirst(PriorityStrategy):
    """Requests a degree-3 item first; a knowably worse first round."""

    name = "degree-three-first"

    def rank_key(self, item, view):
        if view.round_no == 0:
            return (0 if item.degree == 3 else 1, item.degree)
        return (view.live_degree(item), item.degree)


STRATEGY_ZOO = {
    "min-degree-first": MinDegreeFirst,
    "max-degree-first": MaxDegreeFirst,
    "lexicographic": LexicographicShape,
    "mingreedy-det": MinLiveDegreeFirst,
    "random-order": RandomOrder,
    "yao-optimal": DegreeTwoFirstOptimal,
    "degree-three-first": DegreeThreeFirst,
    "isolate-all": IsolateEverything,
    "isolate-first": IsolateFirstThenGreedy,
}

GREEDY_ZOO = ("min-degree-first", "max-degree-first", "lexicographic",
              "mingreedy-det", "random-order", "yao-optimal",
              "degree-three-first")


def make_strategy(name: str, seed: int = 0) -> PriorityStrategy:
    base = name.split(":", 1)[0]
    if base not in STRATEGY_ZOO:
        raise ParameterError(f"unknown strategy {name!r}")
    cls = STRATEGY_ZOO[base]
    if base == "random-order":
        if ":" in name:
            seed = int(name.split(":", 1)[1])
        return cls(seed)
    return cls()
