"""Tie-breaking policies for node and neighbor selection.

The guarantee proofs hold for *arbitrary* tie-breaking among minimum-degree
nodes, so adversarial and exhaustive policies are first-class: a closed set
of uniform-random, lowest-id, stored-order-index, and caller-supplied
callback policies.
"""

from __future__ import annotations

from typing import Callable


class TiePolicy:
    """One of: uniform | lowest | index(i) | callback(fn)."""

    __slots__ = ("kind", "index", "fn")

    def __init__(self, kind: str, index: int | None = None,
                 fn: Callable[[list[int]], int] | None = None):
        if kind not in ("uniform", "lowest", "index", "callback"):
            raise ValueError(f"unknown tie policy {kind!r}")
        self.kind = kind
        self.index = index
        self.fn = fn

    @staticmethod
    def stored_order(i: int) -> "TiePolicy":
        return TiePolicy("index", index=i)

    @staticmethod
    def callback(fn: Callable[[list[int]], int]) -> "TiePolicy":
        return TiePolicy("callback", fn=fn)

    def __repr__(self):
        if self.kind == "index":
            return f"TiePolicy.stored_order({self.index})"
        return f"TiePolicy({self.kind!r})"


UNIFORM = TiePolicy("uniform")
LOWEST_ID = TiePolicy("lowest")


def policy_from_name(name: str) -> TiePolicy:
    if name == "uniform":
        return UNIFORM
    if name == "lowest":
        return LOWEST_ID
    if name.startswith("index:"):
        return TiePolicy.stored_order(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown tie policy name {name!r}")
