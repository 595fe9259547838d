"""Greedy trajectory generation: the RL sorting agent itself."""

import csv
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from rlsort.valuation import RELIABLE, ValueParams, features, residual_matrix, value
from rlsort.varspace import as_state, list_insert

SORTED_DETECTED = "sorted_detected"
STEP_CAP = "step_cap"
INTERRUPTED = "interrupted"

# candidates within this relative distance of the best residual count as tied
_TIE_RTOL = 1e-12


@dataclass
class Step:
    index: int
    action: Tuple[int, int]
    value_after: float
    f1_after: float
    snapshot: Optional[np.ndarray] = None


@dataclass
class Trace:
    initial: Optional[np.ndarray] = None
    initial_value: Optional[float] = None
    steps: List[Step] = field(default_factory=list)
    terminated_reason: Optional[str] = None

    @property
    def moves(self) -> int:
        return sum(1 for s in self.steps if s.action[0] != s.action[1])

    @property
    def values(self) -> List[float]:
        return [s.value_after for s in self.steps]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step", "i", "j", "value", "f1"])
            for s in self.steps:
                w.writerow([s.index, s.action[0], s.action[1], repr(s.value_after), repr(s.f1_after)])

    def write_heatmap_csv(self, path) -> None:
        """One array per row: the initial state, then the state after each step."""
        rows = [self.initial] + [s.snapshot for s in self.steps]
        if any(r is None for r in rows):
            raise ValueError("trace was recorded without snapshots")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["step"] + [f"x{k + 1}" for k in range(len(self.initial))])
            for n, row in enumerate(rows):
                w.writerow([n] + [repr(float(v)) for v in row])


def default_step_cap(d: int) -> int:
    return 10 * d * d


def greedy_action(x: Sequence[float], vp: ValueParams, cmp=RELIABLE) -> Tuple[int, int]:
    """1-based (i, j) maximising the (possibly noisy) value after the move.

    Ties go to the lexicographically smallest action.
    """
    x = as_state(x)
    d = x.size
    if d < 2:
        return (1, 1)
    res = residual_matrix(x, vp, cmp).ravel()
    best = res.max()
    k = int(np.argmax(res >= best - _TIE_RTOL * max(1.0, abs(best))))
    return (k // d + 1, k % d + 1)


FAULT_SCOPES = ("all", "termination")


def rl_sort(x0: Sequence[float], vp: ValueParams, cmp=RELIABLE,
            step_cap: Optional[int] = None, snapshots: bool = False,
            fault_scope: str = "all"):
    """Sort ``x0`` by repeatedly applying the greedy insertion.

    Stops once the value under ``cmp`` is exactly zero. The trace always
    records the ground-truth value and f1 after each step, so runs with a
    faulty comparator can still be checked for progress.

    ``fault_scope="termination"`` restricts ``cmp`` to the sortedness test
    and scans actions with reliable comparisons; the default routes every
    comparison through ``cmp``.
    """
    x = as_state(x0).copy()
    if step_cap is None:
        step_cap = default_step_cap(x.size)
    if step_cap < 1:
        raise ValueError("step_cap must be >= 1")
    if fault_scope not in FAULT_SCOPES:
        raise ValueError(f"fault_scope must be one of {FAULT_SCOPES}")
    scan_cmp = cmp if fault_scope == "all" else RELIABLE
    trace = Trace(initial=x.copy() if snapshots else None, initial_value=value(x, vp))
    while True:
        if value(x, vp, cmp) == 0:
            trace.terminated_reason = SORTED_DETECTED
            break
        if len(trace.steps) >= step_cap:
            trace.terminated_reason = STEP_CAP
            break
        i, j = greedy_action(x, vp, scan_cmp)
        if i != j:
            x = list_insert(x, i, j)
        f = features(x)
        trace.steps.append(Step(
            index=len(trace.steps) + 1,
            action=(i, j),
            value_after=vp.theta[0] * f.f1 + vp.theta[1] * f.f2,
            f1_after=f.f1,
            snapshot=x.copy() if snapshots else None,
        ))
    return x, trace


def interrupt(trace: Trace, at_step: int) -> np.ndarray:
    """The array as it stood after ``at_step`` steps (0 = the input)."""
    if trace.initial is None:
        raise ValueError("trace was recorded without snapshots")
    if not 0 <= at_step <= len(trace.steps):
        raise IndexError(f"at_step={at_step} outside [0, {len(trace.steps)}]")
    if at_step == 0:
        return trace.initial.copy()
    return trace.steps[at_step - 1].snapshot.copy()
