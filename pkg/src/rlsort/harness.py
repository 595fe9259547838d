"""Benchmark and resilience sweeps over datasets, sorters and fault rates.

Results are deterministic functions of the configuration: dataset arrays
are seeded by (master seed, dataset kind, dim) and every trial's comparator
by (master seed, algorithm, kind, dim, p, trial), so adding an algorithm or
a fault rate never shifts anyone else's draws.
"""

import csv
import logging
from dataclasses import dataclass, field, fields
from typing import List, Optional

import numpy as np

from rlsort.agent import STEP_CAP, rl_sort
from rlsort.baselines import SORTERS
from rlsort.comparator import FaultModel, ReliableComparator, derive_seed
from rlsort.experiment import error_distance, gen_dataset, summarize
from rlsort.valuation import ValueParams

log = logging.getLogger(__name__)

ALGORITHMS = ("rl", "bubble", "quick", "selection")

BENCH_COLUMNS = ["algorithm", "dataset", "dim", "p", "trials", "moves_mean", "moves_std",
                 "error_mean", "error_std", "success_rate", "capped"]
RESILIENCE_COLUMNS = ["algorithm", "dim", "p", "trials", "success_rate", "error_mean", "error_std"]


@dataclass
class RunConfig:
    algorithms: List[str] = field(default_factory=lambda: list(ALGORITHMS))
    datasets: List[str] = field(default_factory=lambda: ["sorted", "reversed", "gaussian", "random"])
    dims: List[int] = field(default_factory=lambda: [5, 10])
    fault_rates: List[float] = field(default_factory=lambda: [0.0, 0.05])
    trials: int = 100
    seed: int = 0
    # values are drawn on (0, scale); see README for why the default is large
    scale: float = 1000.0
    sigma: float = 0.1
    step_cap_multiplier: int = 10
    fault_scope: str = "all"

    def __post_init__(self):
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithms {bad}; choose from {ALGORITHMS}")
        if any(not 0.0 <= p <= 1.0 for p in self.fault_rates):
            raise ValueError("fault rates must lie in [0, 1]")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.step_cap_multiplier < 1:
            raise ValueError("step_cap_multiplier must be >= 1")

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)


def make_cmp(p: float, seed: int):
    return ReliableComparator() if p == 0 else FaultModel(p, seed)


def run_one(algorithm: str, x: np.ndarray, cmp, vp: Optional[ValueParams], cfg: RunConfig):
    """Sort one array; returns (output, moves, capped)."""
    if algorithm == "rl":
        cap = cfg.step_cap_multiplier * x.size * x.size
        out, trace = rl_sort(x, vp, cmp, step_cap=cap, fault_scope=cfg.fault_scope)
        return out, trace.moves, trace.terminated_reason == STEP_CAP
    res = SORTERS[algorithm](x, cmp)
    return res.result, res.moves, res.capped


def run_cell(algorithm, kind, dim, p, cfg: RunConfig, vp=None, arrays=None):
    if arrays is None:
        arrays = dataset_for(kind, dim, cfg).arrays
    moves, errors, wins, capped = [], [], 0, 0
    for t, x in enumerate(arrays):
        cmp = make_cmp(p, derive_seed(cfg.seed, algorithm, kind, dim, p, t))
        out, m, cap = run_one(algorithm, x, cmp, vp, cfg)
        e = error_distance(out, np.sort(x))
        moves.append(m)
        errors.append(e)
        wins += e == 0.0
        capped += cap
    return {
        "moves": summarize(moves),
        "error": summarize(errors),
        "success_rate": wins / len(arrays),
        "capped": capped,
        "trials": len(arrays),
    }


def dataset_for(kind, dim, cfg: RunConfig):
    params = {"scale": cfg.scale}
    if kind == "gaussian":
        params["sigma"] = cfg.sigma
    return gen_dataset(kind, dim, cfg.trials, params, derive_seed(cfg.seed, "dataset", kind, dim))


def run_bench(cfg: RunConfig, vp: ValueParams) -> List[dict]:
    rows = []
    for algorithm in cfg.algorithms:
        for kind in cfg.datasets:
            for dim in cfg.dims:
                arrays = dataset_for(kind, dim, cfg).arrays
                for p in cfg.fault_rates:
                    log.info("bench %s %s d=%d p=%g", algorithm, kind, dim, p)
                    r = run_cell(algorithm, kind, dim, p, cfg, vp, arrays)
                    rows.append({
                        "algorithm": algorithm, "dataset": kind, "dim": dim, "p": p,
                        "trials": r["trials"],
                        "moves_mean": r["moves"].mean, "moves_std": r["moves"].stddev,
                        "error_mean": r["error"].mean, "error_std": r["error"].stddev,
                        "success_rate": r["success_rate"], "capped": r["capped"],
                    })
    return rows


def run_resilience(cfg: RunConfig, vp: ValueParams, kind: str = "random") -> List[dict]:
    rows = []
    for algorithm in cfg.algorithms:
        for dim in cfg.dims:
            arrays = dataset_for(kind, dim, cfg).arrays
            for p in cfg.fault_rates:
                log.info("resilience %s d=%d p=%g", algorithm, dim, p)
                r = run_cell(algorithm, kind, dim, p, cfg, vp, arrays)
                rows.append({
                    "algorithm": algorithm, "dim": dim, "p": p, "trials": r["trials"],
                    "success_rate": r["success_rate"],
                    "error_mean": r["error"].mean, "error_std": r["error"].stddev,
                })
    return rows


def _fmt(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_rows(rows: List[dict], columns: List[str], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_fmt(row[c]) for c in columns])


def p_grid(step: float = 0.05, top: float = 0.5) -> List[float]:
    n = int(round(top / step))
    return [round(k * step, 10) for k in range(n + 1)]
