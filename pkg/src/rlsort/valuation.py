"""Features, reward, linear value function and the local value residual.

The value of an array is ``theta . F(x)`` with two features computed over
adjacent pairs:

* ``f1``: number of out-of-order adjacent pairs,
* ``f2``: sum of squared gaps over those pairs.

Each adjacent pair is judged out of order by exactly one comparator call,
which is shared by both features (and by the reward).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from rlsort.comparator import ReliableComparator
from rlsort.varspace import as_state

SORTED_BONUS = 1000.0
RELIABLE = ReliableComparator()


class FeatureVector(NamedTuple):
    f1: float
    f2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.f1, self.f2])


@dataclass(frozen=True)
class ValueParams:
    theta: tuple
    gamma: float = 0.9

    def __post_init__(self):
        theta = tuple(float(t) for t in self.theta)
        if len(theta) != 2:
            raise ValueError("theta must have exactly two components")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")
        object.__setattr__(self, "theta", theta)

    @property
    def stable(self) -> bool:
        """Both weights negative, the precondition for monotone progress."""
        return self.theta[0] < 0 and self.theta[1] < 0


def _pair_terms(x: np.ndarray, cmp):
    gaps = np.diff(x)
    out = cmp.indicators(gaps < 0)
    return gaps, out


def features(x: Sequence[float], cmp=RELIABLE) -> FeatureVector:
    x = as_state(x)
    if x.size < 2:
        return FeatureVector(0.0, 0.0)
    gaps, out = _pair_terms(x, cmp)
    return FeatureVector(float(out.sum()), float(np.sum(gaps * gaps * out)))


def features_many(xs: np.ndarray) -> np.ndarray:
    """Reliable features for a batch of arrays, shape (n, d) -> (n, 2)."""
    gaps = np.diff(np.asarray(xs, dtype=np.float64), axis=1)
    out = gaps < 0
    return np.stack([out.sum(axis=1), np.sum(gaps * gaps * out, axis=1)], axis=1).astype(float)


def reward(x: Sequence[float], cmp=RELIABLE) -> float:
    """Sum of the negative adjacent gaps, plus a bonus when nothing is displaced."""
    x = as_state(x)
    if x.size < 2:
        return SORTED_BONUS
    gaps, out = _pair_terms(x, cmp)
    return float(np.sum(gaps * out)) + SORTED_BONUS * (out.sum() == 0)


def value(x: Sequence[float], vp: ValueParams, cmp=RELIABLE) -> float:
    f = features(x, cmp)
    return vp.theta[0] * f.f1 + vp.theta[1] * f.f2


def _residual_plan(d: int, I: np.ndarray, J: np.ndarray):
    """Adjacent pairs destroyed (-1) and created (+1) by moving I to J.

    ``I``/``J`` are 0-based action indices with ``I != J``. Returns flat
    arrays (action, sign, left, right) where left/right index into ``x``.
    Pairs that would touch the array ends do not exist and are omitted.
    """
    act = np.arange(I.size)
    parts = []

    def add(sign, mask, left, right):
        parts.append((act[mask], np.full(mask.sum(), sign), left[mask], right[mask]))

    # around the source: (i-1, i) and (i, i+1) vanish, (i-1, i+1) appears
    has_l = I >= 1
    has_r = I <= d - 2
    add(-1.0, has_l, I - 1, I)
    add(-1.0, has_r, I, I + 1)
    add(+1.0, has_l & has_r, I - 1, I + 1)

    # around the destination in the shortened array z = x without x_i
    def z(k):
        k = np.clip(k, 0, d - 2)
        return k + (k >= I)

    has_zl = J >= 1
    has_zr = J <= d - 2
    add(-1.0, has_zl & has_zr, z(J - 1), z(J))
    add(+1.0, has_zl, z(J - 1), I)
    add(+1.0, has_zr, I, z(J))
    return tuple(np.concatenate(c) for c in zip(*parts))


@lru_cache(maxsize=64)
def _full_plan(d: int):
    I, J = np.nonzero(~np.eye(d, dtype=bool))
    return I, J, _residual_plan(d, I, J)


def _residuals(x: np.ndarray, n_actions: int, plan, theta, cmp) -> np.ndarray:
    act, sign, left, right = plan
    gaps = x[right] - x[left]
    out = cmp.indicators(gaps < 0)
    contrib = out * (theta[0] + theta[1] * gaps * gaps)
    return np.bincount(act, weights=sign * contrib, minlength=n_actions)


def residual(x: Sequence[float], i: int, j: int, vp: ValueParams, cmp=RELIABLE) -> float:
    """V(list_insert(x, i, j)) - V(x) from the six boundary pairs only (1-based)."""
    x = as_state(x)
    d = x.size
    for name, k in (("i", i), ("j", j)):
        if not 1 <= k <= d:
            raise IndexError(f"{name}={k} outside [1, {d}]")
    if i == j:
        return 0.0
    plan = _residual_plan(d, np.array([i - 1]), np.array([j - 1]))
    return float(_residuals(x, 1, plan, vp.theta, cmp)[0])


def residual_matrix(x: Sequence[float], vp: ValueParams, cmp=RELIABLE) -> np.ndarray:
    """All d x d residuals; entry [i-1, j-1] is the residual of action (i, j).

    Identity actions are exactly zero and consume no comparisons.
    """
    x = as_state(x)
    d = x.size
    out = np.zeros((d, d))
    if d < 2:
        return out
    I, J, plan = _full_plan(d)
    out[I, J] = _residuals(x, I.size, plan, vp.theta, cmp)
    return out
