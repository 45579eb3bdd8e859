"""Execution traces: the per-step record every matcher emits.

A step records the first endpoint, its degree at selection, the mate, and
every edge removed in that step with an M-edge/side-edge flag.  The
certifier replays these records to recover per-step degrees, so every graph
edge must appear in exactly one step.

Storage is columnar so a million-step trace from the compiled fast path can
be wrapped without per-step object overhead; serialization is JSON lines,
one step per line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import TraceMismatchError
from .graph import Graph


@dataclass(frozen=True)
class Step:
    index: int
    selected: int
    degree: int
    mate: int
    removed: tuple[tuple[int, int, bool], ...]

    @property
    def matched_edge(self) -> tuple[int, int]:
        return (self.selected, self.mate)


class ExecutionTrace:
    """Columnar record of one matcher run."""

    __slots__ = ("algorithm", "meta", "selected", "sel_degree", "mate",
                 "rem_src", "rem_dst", "rem_m", "step_ptr")

    def __init__(self, algorithm: str, meta: dict | None = None):
        self.algorithm = algorithm
        self.meta = dict(meta or {})
        self.selected: list[int] = []
        self.sel_degree: list[int] = []
        self.mate: list[int] = []
        self.rem_src: list[int] = []
        self.rem_dst: list[int] = []
        self.rem_m: list[bool] = []
        self.step_ptr: list[int] = [0]

    @classmethod
    def from_columns(cls, algorithm: str, meta: dict, selected, sel_degree, mate,
                     rem_src, rem_dst, rem_m, step_ptr) -> "ExecutionTrace":
        t = cls(algorithm, meta)
        t.selected = selected
        t.sel_degree = sel_degree
        t.mate = mate
        t.rem_src = rem_src
        t.rem_dst = rem_dst
        t.rem_m = rem_m
        t.step_ptr = step_ptr
        return t

    def append_step(self, selected: int, degree: int, mate: int,
                    removed: Sequence[tuple]) -> None:
        self.selected.append(selected)
        self.sel_degree.append(degree)
        self.mate.append(mate)
        for entry in removed:
            x, y, flag = entry[0], entry[1], entry[-1]
            self.rem_src.append(x)
            self.rem_dst.append(y)
            self.rem_m.append(bool(flag))
        self.step_ptr.append(len(self.rem_src))

    @property
    def num_steps(self) -> int:
        return len(self.selected)

    def step(self, i: int) -> Step:
        lo, hi = self.step_ptr[i], self.step_ptr[i + 1]
        removed = tuple((int(self.rem_src[k]), int(self.rem_dst[k]), bool(self.rem_m[k]))
                        for k in range(lo, hi))
        return Step(i, int(self.selected[i]), int(self.sel_degree[i]),
                    int(self.mate[i]), removed)

    def __iter__(self) -> Iterator[Step]:
        for i in range(self.num_steps):
            yield self.step(i)

    def matched_pairs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in zip(self.selected, self.mate)]

    # -- serialization -------------------------------------------------

    def to_jsonl(self, fp) -> None:
        header = {"algorithm": self.algorithm, "meta": self.meta,
                  "steps": self.num_steps}
        fp.write(json.dumps(header, sort_keys=True) + "\n")
        for s in self:
            fp.write(json.dumps({
                "u": s.selected, "d": s.degree, "mate": s.mate,
                "removed": [[x, y, int(f)] for x, y, f in s.removed],
            }) + "\n")

    @classmethod
    def from_jsonl(cls, fp) -> "ExecutionTrace":
        header = json.loads(fp.readline())
        t = cls(header["algorithm"], header.get("meta"))
        for line in fp:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            t.append_step(rec["u"], rec["d"], rec["mate"],
                          [(x, y, bool(f)) for x, y, f in rec["removed"]])
        return t


def validate_trace(g: Graph, trace: ExecutionTrace) -> dict:
    """Replay a trace against its graph.

    Checks that every edge is removed exactly once, that recorded selection
    degrees match the replayed degrees, and whether every step selected a
    node of minimum positive degree (required before certifying).
    Returns {"min_degree_respecting": bool}.
    """
    deg = g.degrees().tolist()
    seen = set()
    min_degree_ok = True
    for s in trace:
        if deg[s.selected] != s.degree:
            raise TraceMismatchError(
                f"step {s.index}: recorded degree {s.degree}, replayed {deg[s.selected]}")
        live_min = min((d for d in deg if d > 0), default=0)
        if s.degree != live_min:
            min_degree_ok = False
        matched_seen = False
        for x, y, is_m in s.removed:
            key = (min(x, y), max(x, y))
            if not g.has_edge(x, y):
                raise TraceMismatchError(f"step {s.index}: ({x}, {y}) is not a graph edge")
            if key in seen:
                raise TraceMismatchError(f"step {s.index}: edge ({x}, {y}) removed twice")
            seen.add(key)
            deg[x] -= 1
            deg[y] -= 1
            if is_m:
                if matched_seen:
                    raise TraceMismatchError(f"step {s.index}: two matched edges")
                if {x, y} != {s.selected, s.mate}:
                    raise TraceMismatchError(f"step {s.index}: matched-edge flag mismatch")
                matched_seen = True
        if not matched_seen:
            raise TraceMismatchError(f"step {s.index}: matched edge missing from removals")
    if len(seen) != g.m:
        raise TraceMismatchError(f"{g.m - len(seen)} edges never removed")
    return {"min_degree_respecting": min_degree_ok}
