"""Instrumented Bubble sort, Quicksort and Selection sort.

Each sorter routes every ordering decision through a comparator and counts
element moves, so they can be run side by side with the RL agent under the
same fault model.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from rlsort.valuation import RELIABLE
from rlsort.varspace import as_state


@dataclass
class SortOutcome:
    result: np.ndarray
    moves: int = 0
    comparisons: int = 0
    capped: bool = False


class _Counter:
    """Comparator wrapper that counts calls."""

    def __init__(self, cmp):
        self.cmp = cmp
        self.n = 0

    def less(self, a, b) -> bool:
        self.n += 1
        return bool(self.cmp.indicator(a < b))


def bubble_sort(x: Sequence[float], cmp=RELIABLE, max_passes=None) -> SortOutcome:
    """Full passes over the array until one pass makes no swap.

    The no-swap test is itself judged by ``cmp``. Passes are capped at
    ``10 * d`` because a faulty comparator can keep it going for a long time.
    """
    a = list(as_state(x))
    d = len(a)
    c = _Counter(cmp)
    if max_passes is None:
        max_passes = 10 * d
    moves = 0
    passes = 0
    capped = False
    while True:
        if passes >= max_passes:
            capped = True
            break
        passes += 1
        swapped = False
        for k in range(d - 1):
            if c.less(a[k + 1], a[k]):
                a[k], a[k + 1] = a[k + 1], a[k]
                moves += 1
                swapped = True
        if not swapped:
            break
    return SortOutcome(np.array(a), moves, c.n, capped)


def selection_sort(x: Sequence[float], cmp=RELIABLE) -> SortOutcome:
    """Select the minimum of the unsorted suffix and move it to the suffix front.

    The move shifts the elements in between right by one (a rotation, not a
    swap), and counts as one move whenever the minimum is not already in place.
    """
    a = list(as_state(x))
    d = len(a)
    c = _Counter(cmp)
    moves = 0
    for k in range(d - 1):
        m = k
        for t in range(k + 1, d):
            if c.less(a[t], a[m]):
                m = t
        if m != k:
            a[k:m + 1] = [a[m]] + a[k:m]
            moves += 1
    return SortOutcome(np.array(a), moves, c.n)


def quick_sort(x: Sequence[float], cmp=RELIABLE, max_depth=None) -> SortOutcome:
    """Three-way partition around the middle element, one pass, no re-checks.

    Every element written into a less/equal/greater sublist counts as one
    move, as does every element written back into the array at the end.
    """
    a = list(as_state(x))
    d = len(a)
    c = _Counter(cmp)
    if max_depth is None:
        max_depth = int(4 * math.log2(max(d, 1))) + 8
    state = {"moves": 0, "capped": False}

    def qs(seq, depth):
        if len(seq) <= 1:
            return seq
        if depth >= max_depth:
            state["capped"] = True
            return seq
        pivot = seq[len(seq) // 2]
        less, equal, greater = [], [], []
        for e in seq:
            if c.less(e, pivot):
                less.append(e)
            elif c.less(pivot, e):
                greater.append(e)
            else:
                equal.append(e)
        state["moves"] += len(seq)
        return qs(less, depth + 1) + equal + qs(greater, depth + 1)

    out = qs(a, 0)
    if d > 1:
        state["moves"] += d
    return SortOutcome(np.array(out), state["moves"], c.n, state["capped"])


SORTERS = {
    "bubble": bubble_sort,
    "quick": quick_sort,
    "selection": selection_sort,
}
