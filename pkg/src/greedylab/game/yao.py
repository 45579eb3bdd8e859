"""Distributional evaluation of deterministic strategies.

The hard distribution is the uniform relabeling of the 6-node gadget with a
perfect matching; a deterministic strategy's expected ratio over it upper
bounds what any randomized priority algorithm can guarantee.  The best play
(request a degree-2 item, match, then complete greedily by live degree)
attains exactly 1/2 * 1 + 1/2 * 2/3 = 5/6 in expectation.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..instances import gen_fig2_gadget
from ..rng import RandomStream
from .engine import StaticAdversary, play
from .strategies import PriorityStrategy


@dataclass
class YaoStats:
    strategy: str
    trials: int
    mean_ratio: float
    std_error: float
    counts: dict[int, int]

    def margin(self, z: float = 3.0) -> float:
        return z * self.std_error


def yao_expected_ratio(strategy: PriorityStrategy, trials: int,
                       seed: int = 0) -> YaoStats:
    """Empirical mean approximation ratio over uniformly random relabelings
    of the gadget (optimum 3 in every labeling)."""
    stream = RandomStream(seed, ("yao",))
    counts: dict[int, int] = {}
    total = 0.0
    sumsq = 0.0
    for t in range(trials):
        perm = list(range(6))
        stream.shuffle(perm)
        inst = gen_fig2_gadget(perm)
        transcript = play(strategy, StaticAdversary(inst.graph), seed=t)
        size = transcript.matching.size
        counts[size] = counts.get(size, 0) + 1
        ratio = size / 3.0
        total += ratio
        sumsq += ratio * ratio
    mean = total / trials
    var = max(sumsq / trials - mean * mean, 0.0)
    se = (var / trials) ** 0.5
    return YaoStats(strategy.name, trials, mean, se, counts)
