"""Reliable and p-faulty comparison primitives.

Every ordering decision in this package goes through a comparator's
``indicator``/``indicators`` methods, so the same sorting code can be run
with perfect or with unreliable comparisons.
"""

import hashlib

import numpy as np


def indicator(cond) -> int:
    """1 if ``cond`` holds, else 0."""
    return 1 if cond else 0


def derive_seed(master_seed: int, *parts) -> int:
    """Stable 64-bit seed from a master seed and arbitrary labels.

    Uses a cryptographic digest rather than ``hash()`` so the result does
    not depend on PYTHONHASHSEED.
    """
    key = repr((int(master_seed),) + tuple(str(p) for p in parts)).encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "little")


class ReliableComparator:
    """Perfect comparisons; consumes no randomness."""

    p = 0.0
    faulty = False

    def indicator(self, cond) -> int:
        return indicator(cond)

    def indicators(self, conds) -> np.ndarray:
        return np.asarray(conds, dtype=bool)

    def __repr__(self):
        return "ReliableComparator()"


class FaultModel:
    """A comparison that answers wrongly with probability ``p``.

    Flips are i.i.d. and every evaluated condition consumes exactly one
    uniform draw from the seeded stream, including when ``p == 0``, so two
    runs that differ only in ``p`` stay aligned draw for draw.
    """

    faulty = True

    def __init__(self, p: float, seed: int = 0):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"fault probability must lie in [0, 1], got {p}")
        self.p = float(p)
        self.seed = int(seed)
        self.rng = np.random.default_rng(self.seed)
        self.draws = 0

    def indicator(self, cond) -> int:
        self.draws += 1
        flip = self.rng.random() < self.p
        return indicator(bool(cond) != flip)

    def indicators(self, conds) -> np.ndarray:
        conds = np.asarray(conds, dtype=bool)
        self.draws += conds.size
        flips = self.rng.random(conds.shape) < self.p
        return conds ^ flips

    def __repr__(self):
        return f"FaultModel(p={self.p}, seed={self.seed})"


def faulty_indicator(cond, fm: FaultModel) -> int:
    return fm.indicator(cond)


def make_comparator(p: float, seed: int = 0):
    """Faulty comparator for ``p`` (even ``p == 0``), or reliable for ``None``."""
    if p is None:
        return ReliableComparator()
    return FaultModel(p, seed)
