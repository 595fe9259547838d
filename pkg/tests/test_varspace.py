import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from rlsort.varspace import (ActionMatrix, apply, assign_matrix, const_assign_matrix,
                             insertion_matrix, list_insert, sum_matrix, swap_matrix)


def test_insertion_same_index_is_identity():
    m = insertion_matrix(2, 2, 3)
    np.testing.assert_array_equal(m.entries, np.eye(3))


@pytest.mark.parametrize("i, j, expected", [
    (1, 3, ["b", "c", "a"]),
    (3, 1, ["c", "a", "b"]),
])
def test_insertion_examples(i, j, expected):
    # symbolic check: apply the permutation to the labels a, b, c
    labels = np.array(["a", "b", "c"])
    m = insertion_matrix(i, j, 3).entries
    assert list(labels[m.argmax(axis=1)]) == expected


def test_insertion_numeric_matches_examples():
    x = np.array([10.0, 20.0, 30.0])
    np.testing.assert_array_equal(apply(insertion_matrix(1, 3, 3), x), [20, 30, 10])
    np.testing.assert_array_equal(apply(insertion_matrix(3, 1, 3), x), [30, 10, 20])


@pytest.mark.parametrize("x, i, j, expected", [
    ([5, 6, 7], 2, 2, [5, 6, 7]),
    ([1, 2, 3, 4], 4, 1, [4, 1, 2, 3]),
    ([1, 2, 3, 4], 1, 4, [2, 3, 4, 1]),
])
def test_list_insert_examples(x, i, j, expected):
    np.testing.assert_array_equal(list_insert(x, i, j), expected)


@pytest.mark.parametrize("bad", [(0, 1), (1, 0), (4, 1), (1, 4)])
def test_index_out_of_range(bad):
    with pytest.raises(IndexError):
        insertion_matrix(*bad, 3)
    with pytest.raises(IndexError):
        list_insert([1, 2, 3], *bad)


def test_apply_examples():
    x = np.array([0.3, -1.5, 2.0])
    np.testing.assert_array_equal(apply(ActionMatrix("insertion", 1, 1, 3, np.eye(3)), x), x)
    np.testing.assert_array_equal(apply(swap_matrix(1, 2, 2), [3, 9]), [9, 3])
    np.testing.assert_array_equal(apply(sum_matrix(1, 2, 3, 3), [1, 2, 3]), [5, 2, 3])


def test_apply_dimension_mismatch():
    with pytest.raises(ValueError):
        apply(swap_matrix(1, 2, 3), [1.0, 2.0])


def test_program_operation_examples():
    np.testing.assert_array_equal(apply(assign_matrix(1, 3, 3), [7, 8, 9]), [9, 8, 9])
    np.testing.assert_array_equal(apply(const_assign_matrix(2, 0, 3), [7, 8, 9]), [7, 0, 9])
    np.testing.assert_array_equal(apply(swap_matrix(1, 3, 3), [7, 8, 9]), [9, 8, 7])


def test_program_matrices_touch_only_row_i():
    d = 5
    eye = np.eye(d)
    for m in (assign_matrix(2, 4, d), const_assign_matrix(2, 3.5, d), sum_matrix(2, 1, 5, d)):
        diff = np.nonzero((m.entries != eye).any(axis=1))[0]
        assert list(diff) == [1]
    sw = swap_matrix(2, 4, d)
    assert list(np.nonzero((sw.entries != eye).any(axis=1))[0]) == [1, 3]


def test_insertion_exhaustive_small_dims(rng):
    for d in range(1, 7):
        for i, j in itertools.product(range(1, d + 1), repeat=2):
            m = insertion_matrix(i, j, d)
            assert m.is_permutation()
            for _ in range(100):
                x = rng.normal(size=d)
                np.testing.assert_array_equal(apply(m, x), list_insert(x, i, j))


def test_identity_for_all_diagonal_actions():
    for d in range(1, 8):
        for i in range(1, d + 1):
            np.testing.assert_array_equal(insertion_matrix(i, i, d).entries, np.eye(d))


@given(
    arrays(np.float64, st.integers(1, 12),
           elements=st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)),
    st.data(),
)
def test_insert_and_swap_preserve_multiset(x, data):
    d = x.size
    i = data.draw(st.integers(1, d))
    j = data.draw(st.integers(1, d))
    y = apply(insertion_matrix(i, j, d), x)
    np.testing.assert_array_equal(np.sort(y), np.sort(x))
    np.testing.assert_array_equal(y, list_insert(x, i, j))
    assert y[j - 1] == x[i - 1]
    others_before = np.delete(x, i - 1)
    others_after = np.delete(y, j - 1)
    np.testing.assert_array_equal(others_before, others_after)
    np.testing.assert_array_equal(np.sort(apply(swap_matrix(i, j, d), x)), np.sort(x))
