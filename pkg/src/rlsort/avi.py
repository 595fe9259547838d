"""Approximate value iteration for the sorting value function.

Each iteration draws fresh uniform arrays, computes one-step backup targets
``R(x) + gamma * max_u V(M_u x)`` under the current weights (the E-step),
then refits the weights by least squares on the two features (the M-step).
"""

import json
import logging
from dataclasses import asdict, dataclass

import numpy as np

from rlsort.valuation import ValueParams, features_many, residual_matrix, reward, value

log = logging.getLogger(__name__)


class RegressionError(RuntimeError):
    pass


@dataclass
class LearnConfig:
    sample_dim: int = 6
    samples_per_iter: int = 1000
    iterations: int = 15
    gamma: float = 0.9
    seed: int = 0
    # draw a fresh sample set every iteration; False reuses the first one
    resample: bool = True

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.sample_dim < 2:
            raise ValueError("sample_dim must be >= 2")
        if self.samples_per_iter < 1:
            raise ValueError("samples_per_iter must be >= 1")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must lie in [0, 1]")


def sample_states(cfg: LearnConfig, rng=None) -> np.ndarray:
    """``samples_per_iter`` arrays with i.i.d. coordinates on the open interval (0, 1)."""
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    xs = rng.random((cfg.samples_per_iter, cfg.sample_dim))
    # Generator.random is [0, 1); nudge the (measure-zero) exact zeros inside
    xs[xs == 0.0] = np.nextafter(0.0, 1.0)
    return xs


def bellman_target(x, vp: ValueParams) -> float:
    """R(x) + gamma * max over all d^2 insertions of V(M x), reliable comparisons."""
    best_gain = residual_matrix(x, vp).max()  # identity actions make this >= 0
    return reward(x) + vp.gamma * (value(x, vp) + best_gain)


def fit_theta(feats: np.ndarray, targets: np.ndarray):
    """Ordinary least squares of targets on [f1, f2] (no intercept)."""
    if np.linalg.matrix_rank(feats) < 2:
        raise RegressionError(
            "feature matrix is rank deficient (too few unsorted samples); "
            "increase samples_per_iter or sample_dim"
        )
    theta, _, _, _ = np.linalg.lstsq(feats, targets, rcond=None)
    resid = float(np.linalg.norm(feats @ theta - targets))
    return theta, resid


def avi_learn(cfg: LearnConfig, return_history: bool = False):
    rng = np.random.default_rng(cfg.seed)
    vp = ValueParams((0.0, 0.0), cfg.gamma)
    history = []
    xs = None
    for it in range(cfg.iterations):
        if xs is None or cfg.resample:
            xs = sample_states(cfg, rng)
        targets = np.array([bellman_target(x, vp) for x in xs])
        theta, resid = fit_theta(features_many(xs), targets)
        if not np.all(np.isfinite(theta)):
            raise RegressionError(f"non-finite weights at iteration {it + 1}")
        vp = ValueParams(tuple(theta), cfg.gamma)
        history.append({"iteration": it + 1, "theta": list(vp.theta), "residual": resid})
        log.debug("iteration %d theta=%s residual=%.4g", it + 1, vp.theta, resid)
    if return_history:
        return vp, history
    return vp


def save_params(path, vp: ValueParams, cfg: LearnConfig = None) -> None:
    doc = {"theta": list(vp.theta), "gamma": vp.gamma}
    if cfg is not None:
        doc["seed"] = cfg.seed
        doc["learn_config"] = asdict(cfg)
    doc["provenance"] = "rlsort.avi.avi_learn"
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_params(path) -> ValueParams:
    with open(path) as fh:
        doc = json.load(fh)
    return ValueParams(tuple(doc["theta"]), doc.get("gamma", 0.9))
