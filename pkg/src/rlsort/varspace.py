"""Program state vectors and the transformation matrices that act on them.

A program with ``d`` real-valued variables is a point in R^d, and each
assignment, summation, swap or list insertion is a linear map ``x -> M x``.
All public indices are 1-based.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

KINDS = ("insertion", "assignment", "const_assignment", "summation", "swap")


@dataclass(frozen=True)
class ActionMatrix:
    kind: str
    i: int
    j: Optional[int]
    dim: int
    entries: np.ndarray
    j2: Optional[int] = None
    c: Optional[float] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError("entries must be a dim x dim matrix")

    def is_permutation(self) -> bool:
        m = self.entries
        return bool(
            np.isin(m, (0.0, 1.0)).all()
            and (m.sum(axis=0) == 1).all()
            and (m.sum(axis=1) == 1).all()
        )


def as_state(x: Sequence[float]) -> np.ndarray:
    """Coerce ``x`` to a 1-D float64 state vector of dimension >= 1."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("state vector must be one-dimensional with dim >= 1")
    return arr


def _check_index(name: str, k: int, d: int) -> None:
    if not 1 <= k <= d:
        raise IndexError(f"{name}={k} outside [1, {d}]")


def list_insert(x: Sequence[float], i: int, j: int) -> np.ndarray:
    """Remove the i-th element and re-insert it so it ends at position j."""
    arr = as_state(x)
    d = arr.size
    _check_index("i", i, d)
    _check_index("j", j, d)
    out = list(arr)
    out.insert(j - 1, out.pop(i - 1))
    return np.array(out, dtype=np.float64)


def insertion_matrix(i: int, j: int, d: int) -> ActionMatrix:
    """Permutation matrix M with ``M @ x == list_insert(x, i, j)``.

    Row ``k`` of the matrix selects the source coordinate that lands in
    output slot ``k``.
    """
    _check_index("i", i, d)
    _check_index("j", j, d)
    # source order after the move, 0-based
    src = list(range(d))
    src.insert(j - 1, src.pop(i - 1))
    m = np.zeros((d, d))
    m[np.arange(d), src] = 1.0
    return ActionMatrix("insertion", i, j, d, m)


def assign_matrix(i: int, j: int, d: int) -> ActionMatrix:
    """x_i <- x_j."""
    _check_index("i", i, d)
    _check_index("j", j, d)
    m = np.eye(d)
    m[i - 1, :] = 0.0
    m[i - 1, j - 1] = 1.0
    return ActionMatrix("assignment", i, j, d, m)


def const_assign_matrix(i: int, c: float, d: int) -> ActionMatrix:
    """Identity with m_ii = c, so x_i <- c * x_i (c = 0 clears the slot)."""
    _check_index("i", i, d)
    m = np.eye(d)
    m[i - 1, i - 1] = c
    return ActionMatrix("const_assignment", i, None, d, m, c=float(c))


def sum_matrix(i: int, j1: int, j2: int, d: int) -> ActionMatrix:
    """x_i <- x_j1 + x_j2. With j1 == j2 the row carries a single 2."""
    for name, k in (("i", i), ("j1", j1), ("j2", j2)):
        _check_index(name, k, d)
    m = np.eye(d)
    m[i - 1, :] = 0.0
    m[i - 1, j1 - 1] += 1.0
    m[i - 1, j2 - 1] += 1.0
    return ActionMatrix("summation", i, j1, d, m, j2=j2)


def swap_matrix(i: int, j: int, d: int) -> ActionMatrix:
    _check_index("i", i, d)
    _check_index("j", j, d)
    m = np.eye(d)
    m[[i - 1, j - 1]] = m[[j - 1, i - 1]]
    return ActionMatrix("swap", i, j, d, m)


def apply(m: ActionMatrix, x: Sequence[float]) -> np.ndarray:
    arr = as_state(x)
    if m.dim != arr.size:
        raise ValueError(f"matrix dim {m.dim} does not match state dim {arr.size}")
    return m.entries @ arr
