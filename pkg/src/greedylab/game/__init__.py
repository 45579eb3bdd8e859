"""Adaptive priority game in the vertex model: engine, strategies,
adversaries, and the randomized-strategy distribution evaluation."""

from .items import DataItem, GameView
from .strategies import (PriorityStrategy, STRATEGY_ZOO, GREEDY_ZOO,
                         make_strategy)
from .engine import GameTranscript, StaticAdversary, check_consistency, play
from .adversaries import Thm4Adversary, Thm6Adversary, thm4_adversary, thm6_adversary
from .yao import YaoStats, yao_expected_ratio

__all__ = [
    "DataItem", "GameView", "PriorityStrategy", "STRATEGY_ZOO", "GREEDY_ZOO",
    "make_strategy", "GameTranscript", "StaticAdversary", "check_consistency",
    "play", "Thm4Adversary", "Thm6Adversary", "thm4_adversary", "thm6_adversary",
    "YaoStats", "yao_expected_ratio",
]
