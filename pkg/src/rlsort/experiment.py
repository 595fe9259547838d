"""Datasets, error metrics and summary statistics for the benchmarks."""

import json
from dataclasses import dataclass, field
from typing import List, NamedTuple, Sequence

import numpy as np

from rlsort.varspace import as_state

DATASET_KINDS = ("sorted", "reversed", "gaussian", "random")


@dataclass
class Dataset:
    kind: str
    dim: int
    count: int
    seed: int
    params: dict = field(default_factory=dict)
    arrays: List[np.ndarray] = field(default_factory=list)

    def to_jsonl(self, path) -> None:
        with open(path, "w") as fh:
            header = {"kind": self.kind, "dim": self.dim, "count": self.count,
                      "seed": self.seed, "params": self.params}
            fh.write(json.dumps(header, sort_keys=True) + "\n")
            for k, a in enumerate(self.arrays):
                fh.write(json.dumps({"index": k, "x": [float(v) for v in a]}) + "\n")

    @classmethod
    def from_jsonl(cls, path) -> "Dataset":
        with open(path) as fh:
            header = json.loads(fh.readline())
            arrays = [np.array(json.loads(line)["x"], dtype=np.float64) for line in fh if line.strip()]
        if len(arrays) != header["count"]:
            raise ValueError(f"{path}: expected {header['count']} arrays, found {len(arrays)}")
        return cls(header["kind"], header["dim"], header["count"], header["seed"],
                   header.get("params", {}), arrays)


def gen_dataset(kind: str, dim: int, count: int, params: dict = None, seed: int = 0) -> Dataset:
    """Generate ``count`` arrays of length ``dim``.

    Values are uniform on (0, scale), ``params["scale"]`` defaulting to 1.
    ``sorted``/``reversed`` sort those draws ascending/descending;
    ``gaussian`` adds N(0, (sigma * scale)^2) noise to a sorted draw.
    """
    params = dict(params or {})
    if kind not in DATASET_KINDS:
        raise ValueError(f"unknown dataset kind {kind!r}; choose from {DATASET_KINDS}")
    if dim < 1 or count < 1:
        raise ValueError("dim and count must be >= 1")
    scale = float(params.setdefault("scale", 1.0))
    if scale <= 0:
        raise ValueError("scale must be positive")
    if kind == "gaussian":
        sigma = float(params.setdefault("sigma", 0.1))
        if sigma < 0:
            raise ValueError("gaussian displacement sigma must be >= 0")
    rng = np.random.default_rng(seed)
    arrays = []
    for _ in range(count):
        x = rng.random(dim)
        x[x == 0.0] = np.nextafter(0.0, 1.0)
        x = x * scale
        if kind == "sorted":
            x = np.sort(x)
        elif kind == "reversed":
            x = np.sort(x)[::-1].copy()
        elif kind == "gaussian":
            x = np.sort(x) + rng.normal(0.0, sigma * scale, dim)
        arrays.append(x)
    return Dataset(kind, dim, count, seed, params, arrays)


def error_distance(x_out: Sequence[float], x_ref: Sequence[float]) -> float:
    a, b = as_state(x_out), as_state(x_ref)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.size} vs {b.size}")
    return float(np.linalg.norm(a - b))


def success(x_out, x_ref) -> bool:
    """Exact match with the reliably sorted reference."""
    return error_distance(x_out, x_ref) == 0.0


class StatSummary(NamedTuple):
    mean: float
    stddev: float
    n: int


def summarize(values: Sequence[float]) -> StatSummary:
    """Sample mean and (n - 1)-denominator standard deviation; 0 for one value."""
    v = np.asarray(list(values), dtype=np.float64)
    if v.size == 0:
        raise ValueError("cannot summarize an empty list")
    sd = float(np.std(v, ddof=1)) if v.size > 1 else 0.0
    return StatSummary(float(np.mean(v)), sd, int(v.size))
