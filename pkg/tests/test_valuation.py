import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rlsort.comparator import FaultModel
from rlsort.valuation import (SORTED_BONUS, ValueParams, features, features_many, residual,
                              residual_matrix, reward, value)
from rlsort.varspace import apply, insertion_matrix, list_insert

# millesimal grid keeps squared gaps clear of underflow
distinct_arrays = st.lists(st.integers(-100_000, 100_000), min_size=1, max_size=10,
                           unique=True).map(lambda v: np.array(v) / 1000.0)


def features_oracle(x):
    """Pair-by-pair loop straight from the definition."""
    f1 = f2 = 0.0
    for k in range(1, len(x)):
        gap = x[k] - x[k - 1]
        if gap < 0:
            f1 += 1
            f2 += gap * gap
    return f1, f2


@pytest.mark.parametrize("x, f1, f2", [
    ([0.1, 0.2, 0.3], 0, 0.0),
    ([0.1, 0.5, 0.3, 0.2], 2, 0.05),
    ([3, 2, 1], 2, 2.0),
])
def test_feature_examples(x, f1, f2):
    f = features(x)
    assert f.f1 == f1
    assert f.f2 == pytest.approx(f2, abs=1e-12)


def test_single_element_features_are_zero():
    assert features([4.2]) == (0.0, 0.0)


@pytest.mark.parametrize("x, r", [
    ([0.1, 0.2, 0.7], 1000.0),
    ([0.5, 0.1], -0.4),
    ([1, 3, 2, 4], -1.0),
])
def test_reward_examples(x, r):
    assert reward(x) == pytest.approx(r, abs=1e-12)


def test_value_examples(ref_vp):
    assert value([0.1, 0.2, 0.3], ref_vp) == 0.0
    assert value([3, 2, 1], ValueParams((-1, -1))) == -4.0
    f1, f2 = features_oracle([0.1, 0.5, 0.3, 0.2])
    expected = -1.4298 * f1 - 0.4216 * f2
    assert expected == pytest.approx(-2.88068, abs=1e-12)
    assert value([0.1, 0.5, 0.3, 0.2], ref_vp) == pytest.approx(expected, abs=1e-12)


def test_residual_examples():
    vp = ValueParams((-1, -1))
    assert residual([4, 1, 3], 2, 2, vp) == 0.0
    assert residual([2, 1], 1, 2, vp) == 2.0


def test_residual_index_errors():
    with pytest.raises(IndexError):
        residual([1, 2, 3], 0, 1, ValueParams((-1, -1)))


def test_residual_matches_full_recompute(ref_vp, rng):
    worst = 0.0
    for _ in range(200):
        d = int(rng.integers(1, 9))
        x = rng.random(d) * rng.choice([1.0, 1000.0])
        base = value(x, ref_vp)
        mat = residual_matrix(x, ref_vp)
        for i, j in itertools.product(range(1, d + 1), repeat=2):
            oracle = value(apply(insertion_matrix(i, j, d), x), ref_vp) - base
            worst = max(worst, abs(mat[i - 1, j - 1] - oracle),
                        abs(residual(x, i, j, ref_vp) - oracle))
    assert worst <= 1e-9


@given(distinct_arrays)
def test_features_match_oracle(x):
    f = features(x)
    o = features_oracle(x)
    assert f.f1 == o[0]
    assert f.f2 == pytest.approx(o[1], rel=1e-12, abs=1e-12)
    np.testing.assert_allclose(features_many(x[None, :])[0], o, rtol=1e-12, atol=1e-12)


@given(distinct_arrays)
def test_sortedness_invariants(x):
    vp = ValueParams((-0.7, -2.0))
    is_sorted = bool(np.all(np.diff(x) > 0))
    f = features(x)
    assert (f.f1 == 0) == is_sorted
    assert (f.f1 == 0) == (f.f2 == 0)
    assert 0 <= f.f1 <= len(x) - 1
    v = value(x, vp)
    assert v <= 0
    assert (v == 0) == is_sorted
    if is_sorted:
        assert reward(x) == SORTED_BONUS
    else:
        assert reward(x) <= 0


@settings(max_examples=50)
@given(distinct_arrays, st.integers(0, 2 ** 32))
def test_zero_fault_rate_matches_reliable(x, seed):
    fm = FaultModel(0.0, seed)
    assert features(x, fm) == features(x)
    assert reward(x, fm) == reward(x)
    vp = ValueParams((-1.0, -0.5))
    np.testing.assert_array_equal(residual_matrix(x, vp, fm), residual_matrix(x, vp))


def test_faulty_residual_consumes_draws():
    fm = FaultModel(0.5, 1)
    x = np.array([3.0, 1.0, 2.0, 5.0])
    residual_matrix(x, ValueParams((-1, -1)), fm)
    assert fm.draws > 0
    before = fm.draws
    residual(x, 2, 2, ValueParams((-1, -1)), fm)
    assert fm.draws == before


def test_value_params_validation():
    with pytest.raises(ValueError):
        ValueParams((1.0,))
    with pytest.raises(ValueError):
        ValueParams((-1.0, -1.0), gamma=1.5)
    assert ValueParams((-1, -2)).stable
    assert not ValueParams((-1, 2)).stable


def test_list_insert_residual_sign_on_sorted(ref_vp, rng):
    x = np.sort(rng.random(7))
    assert residual_matrix(x, ref_vp).max() == 0.0
    assert value(list_insert(x, 1, 7), ref_vp) < 0
