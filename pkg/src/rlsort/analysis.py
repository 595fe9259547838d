"""Stability and resiliency checks for the RL sorting agent.

Covers monotone value progress along a trace, the Lyapunov function
``W = -V``, the probability that a faulty sortedness test wrongly reports an
array as sorted, and the partition of actions into improving, neutral and
worsening sets.
"""

import json
from dataclasses import asdict, dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from rlsort.agent import Trace
from rlsort.comparator import FaultModel
from rlsort.valuation import ValueParams, features, residual_matrix, value
from rlsort.varspace import as_state


@dataclass
class AnalysisReport:
    d: int
    k: int
    g: int
    n: int
    w: int
    p: float
    p_term_paper: float
    p_term_independent: float
    p_term_mc: float
    p_wrong_action: Optional[float] = None
    p_v: Optional[float] = None
    violations: Optional[list] = None

    def __post_init__(self):
        if self.g + self.n + self.w != self.d * self.d:
            raise ValueError("action partition does not cover all d^2 actions")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def check_monotonic(trace, initial_value: Optional[float] = None) -> list:
    """Positions whose value failed to strictly exceed the previous one.

    ``trace`` is a :class:`Trace` or a plain sequence of values. For a Trace
    the starting value is taken from the trace itself, so position 0 is
    checked against the input array.
    """
    if isinstance(trace, Trace):
        values = trace.values
        if initial_value is None:
            initial_value = trace.initial_value
    else:
        values = list(trace)
    prev = [initial_value] + values[:-1]
    return [k for k, (a, b) in enumerate(zip(prev, values)) if a is not None and not b > a]


def lyapunov_w(x: Sequence[float], vp: ValueParams) -> float:
    """Control Lyapunov function: zero on the sorted array, positive elsewhere."""
    return -value(x, vp)


def termination_prob_paper(d: int, k: int, p: float) -> float:
    """Binomial expression for a false 'sorted' verdict, exactly as published."""
    if not 0 <= k <= d:
        raise ValueError("k must lie in [0, d]")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    return comb(d, k) * p ** k * (1 - p) ** (d - k)


def termination_prob_independent(d: int, k: int, p: float) -> float:
    """Product over the d-1 adjacent pairs: all k displaced pairs flip, no other does."""
    if not 0 <= k <= d - 1:
        raise ValueError("k must lie in [0, d-1]")
    return p ** k * (1 - p) ** (d - 1 - k)


def termination_prob_mc(x: Sequence[float], p: float, trials: int, seed: int = 0) -> float:
    """Fraction of faulty f1 evaluations of ``x`` that come out as zero."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x = as_state(x)
    fm = FaultModel(p, seed)
    displaced = np.diff(x) < 0
    out = fm.indicators(np.broadcast_to(displaced, (trials, displaced.size)))
    return float(np.mean(~out.any(axis=1)))


def partition_gnw(x: Sequence[float], vp: ValueParams, rtol: float = 1e-12):
    """Counts of actions whose reliable residual is >0, ==0, <0.

    Residuals within ``rtol`` (relative to |V(x)| + 1) of zero are treated as
    zero so that exact cancellations survive rounding.
    """
    x = as_state(x)
    res = residual_matrix(x, vp)
    tol = rtol * (1.0 + abs(value(x, vp)))
    g = int(np.sum(res > tol))
    w = int(np.sum(res < -tol))
    return g, res.size - g - w, w


def wrong_action_prob_from_counts(w: int, d: int, p_v: float) -> float:
    if not 0.0 <= p_v <= 1.0:
        raise ValueError("p_v must lie in [0, 1]")
    return w / d ** 4 * p_v


def wrong_action_prob(x: Sequence[float], vp: ValueParams, p_v: float) -> float:
    """(w / d^4) * p_v, with w the number of value-decreasing actions."""
    x = as_state(x)
    _, _, w = partition_gnw(x, vp)
    return wrong_action_prob_from_counts(w, x.size, p_v)


def analyze(x: Sequence[float], vp: ValueParams, p: float, trials: int = 10_000,
            seed: int = 0, p_v: Optional[float] = None, trace: Trace = None) -> AnalysisReport:
    x = as_state(x)
    d = x.size
    k = int(features(x).f1)
    g, n, w = partition_gnw(x, vp)
    return AnalysisReport(
        d=d, k=k, g=g, n=n, w=w, p=p,
        p_term_paper=termination_prob_paper(d, k, p),
        p_term_independent=termination_prob_independent(d, k, p) if d > 1 else 1.0,
        p_term_mc=termination_prob_mc(x, p, trials, seed),
        p_wrong_action=None if p_v is None else wrong_action_prob_from_counts(w, d, p_v),
        p_v=p_v,
        violations=None if trace is None else check_monotonic(trace),
    )
