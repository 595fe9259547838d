"""Resilient sorting with a reinforcement-learning agent.

Arrays are states of a discrete-time dynamical system, element insertions
are the control actions, and a learned linear value function over two
"sortedness" features drives a greedy policy whose value rises
monotonically when comparisons are reliable.
"""

from rlsort.agent import Trace, greedy_action, interrupt, rl_sort
from rlsort.avi import LearnConfig, avi_learn
from rlsort.comparator import FaultModel, ReliableComparator
from rlsort.valuation import ValueParams, features, residual, reward, value

__all__ = [
    "FaultModel", "LearnConfig", "ReliableComparator", "Trace", "ValueParams",
    "avi_learn", "features", "greedy_action", "interrupt", "residual", "reward",
    "rl_sort", "value",
]

__version__ = "0.1.0"
