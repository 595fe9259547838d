import numpy as np
import pytest

from rlsort.comparator import (FaultModel, ReliableComparator, derive_seed, faulty_indicator,
                               indicator)


def test_indicator():
    assert indicator(True) == 1
    assert indicator(False) == 0
    assert indicator(0.1 < 0.2) == 1


@pytest.mark.parametrize("cond", [True, False])
def test_degenerate_fault_rates(cond):
    fm0 = FaultModel(0.0, seed=3)
    fm1 = FaultModel(1.0, seed=3)
    for _ in range(50):
        assert faulty_indicator(cond, fm0) == indicator(cond)
        assert faulty_indicator(cond, fm1) == 1 - indicator(cond)


def test_flip_rate_example():
    fm = FaultModel(0.3, seed=11)
    flips = 1 - fm.indicators(np.ones(100_000, dtype=bool)).astype(int)
    assert 0.28 <= flips.mean() <= 0.32


@pytest.mark.parametrize("p", [0.01, 0.05, 0.3, 0.5])
def test_flip_rate_within_three_sigma(p):
    n = 50_000
    fm = FaultModel(p, seed=derive_seed(1, p))
    flips = np.array([fm.indicator(False) for _ in range(n)])
    sigma = np.sqrt(p * (1 - p) / n)
    assert abs(flips.mean() - p) <= 3 * sigma


def test_one_draw_per_comparison_even_at_zero():
    fm = FaultModel(0.0, seed=0)
    fm.indicator(True)
    fm.indicators(np.zeros(7, dtype=bool))
    assert fm.draws == 8
    # the underlying stream advanced by exactly 8 draws
    ref = np.random.default_rng(0)
    ref.random(8)
    assert fm.rng.random() == ref.random()


def test_same_seed_same_sequence():
    a, b = FaultModel(0.2, 99), FaultModel(0.2, 99)
    conds = np.random.default_rng(0).random(500) < 0.5
    out_a = [a.indicator(c) for c in conds] + list(a.indicators(conds))
    out_b = [b.indicator(c) for c in conds] + list(b.indicators(conds))
    assert out_a == out_b


def test_runs_aligned_across_p():
    # one draw per call means the flip sets are nested as p grows
    conds = np.zeros(2000, dtype=bool)
    lo = FaultModel(0.05, 4).indicators(conds)
    hi = FaultModel(0.2, 4).indicators(conds)
    assert np.all(hi[lo])


def test_invalid_p():
    with pytest.raises(ValueError):
        FaultModel(1.5)
    with pytest.raises(ValueError):
        FaultModel(-0.1)


def test_reliable_consumes_nothing():
    r = ReliableComparator()
    np.testing.assert_array_equal(r.indicators([True, False]), [True, False])
    assert r.indicator(False) == 0


def test_derive_seed_is_stable_and_label_sensitive():
    assert derive_seed(0, "rl", "random", 10, 0.05, 3) == derive_seed(0, "rl", "random", 10, 0.05, 3)
    assert derive_seed(0, "rl", "random", 10, 0.05, 3) != derive_seed(0, "bubble", "random", 10, 0.05, 3)
    assert derive_seed(0, "a") != derive_seed(1, "a")
    assert 0 <= derive_seed(7, "x") < 2 ** 64
