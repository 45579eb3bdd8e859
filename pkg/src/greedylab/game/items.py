"""Data items and the game view a strategy ranks them against."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DataItem:
    """A node together with its full neighbor list in the input graph."""

    node: int
    neighbors: tuple[int, ...]

    def __post_init__(self):
        nbrs = tuple(sorted(self.neighbors))
        if len(set(nbrs)) != len(nbrs):
            raise ValueError("neighbor list contains duplicates")
        if self.node in nbrs:
            raise ValueError("item node cannot be its own neighbor")
        object.__setattr__(self, "neighbors", nbrs)

    @property
    def degree(self) -> int:
        return len(self.neighbors)


@dataclass(frozen=True)
class GameView:
    """What a strategy may condition on: the revealed history."""

    round_no: int
    known: frozenset[int] = frozenset()
    matched: frozenset[int] = frozenset()
    isolated: frozenset[int] = frozenset()
    history: tuple[tuple[DataItem, int | None], ...] = ()

    def n_known(self, item) -> int:
        return sum(1 for v in item.neighbors if v in self.known)

    def live_degree(self, item) -> int:
        return sum(1 for v in item.neighbors
                   if v not in self.matched and v not in self.isolated)

    def advance(self, item: DataItem, mate: int | None) -> "GameView":
        known = self.known | {item.node} | set(item.neighbors)
        matched = self.matched
        isolated = self.isolated
        if mate is None:
            isolated = isolated | {item.node}
        else:
            matched = matched | {item.node, mate}
        return GameView(self.round_no + 1, frozenset(known), frozenset(matched),
                        frozenset(isolated), self.history + ((item, mate),))
