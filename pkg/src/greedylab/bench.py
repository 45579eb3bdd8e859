"""Runtime benchmark for the deletion structure.

The structure claims constant time per operation, observable as linear
total time: build plus full deletion on random graphs with m = 3n should
roughly double when n doubles.
"""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass

from .dynamic import DynamicGraph
from .instances import gen_erdos_renyi


@dataclass
class BenchRow:
    n: int
    m: int
    seconds: float


def bench_dynamic(sizes, seed=0, repeats: int = 3, edge_factor: int = 3) -> list[BenchRow]:
    """Build + drain timings (best of `repeats`) for each size."""
    rows = []
    for n in sizes:
        n = int(n)
        inst = gen_erdos_renyi(n, edge_factor * n, seed)
        best = float("inf")
        for _ in range(repeats):
            gc.disable()
            try:
                t0 = time.perf_counter()
                dg = DynamicGraph(inst.graph)
                dg.drain()
                dt = time.perf_counter() - t0
            finally:
                gc.enable()
            best = min(best, dt)
        rows.append(BenchRow(n, inst.graph.m, best))
    return rows


def doubling_factors(rows: list[BenchRow]) -> list[float]:
    return [rows[i + 1].seconds / rows[i].seconds for i in range(len(rows) - 1)]
