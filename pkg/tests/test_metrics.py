import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tomolift import states
from tomolift.metrics import frobenius_sq, mse, trace_distance


def test_mse_identical_is_zero():
    rho = states.make_cat_state(2)
    assert mse(rho, rho) == 0.0


def test_mse_diagonal_example():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert mse(a, b) == pytest.approx(0.5)
    assert frobenius_sq(a, b) == pytest.approx(2.0)


def test_mse_cat_vs_mixed():
    # difference has 2 diagonal entries of 1/4 and 2 off-diagonals of 1/2:
    # (2*(1/16) + 2*(1/4)) / 16 = 0.046875
    val = mse(states.make_cat_state(2), states.maximally_mixed(2))
    assert val == pytest.approx(0.046875)


def test_frobenius_is_scaled_mse():
    a = states.random_density_matrix(2, 3, 1)
    b = states.random_density_matrix(2, 2, 2)
    assert frobenius_sq(a, b) == pytest.approx(16 * mse(a, b))


def test_trace_distance_orthogonal_pure_states():
    a = np.diag([1.0, 0.0]).astype(complex)
    b = np.diag([0.0, 1.0]).astype(complex)
    assert trace_distance(a, b) == pytest.approx(1.0)


def test_trace_distance_cat_vs_mixed():
    # eigenvalues of the difference are (3/4, -1/4, -1/4, -1/4)
    val = trace_distance(states.make_cat_state(2), states.maximally_mixed(2))
    assert val == pytest.approx(0.75)


@given(st.integers(0, 2**31 - 1), st.integers(0, 2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_metric_symmetry_and_bounds(seed_a, seed_b):
    a = states.random_density_matrix(2, 4, seed_a)
    b = states.random_density_matrix(2, 4, seed_b)
    assert mse(a, b) == pytest.approx(mse(b, a))
    assert trace_distance(a, b) == pytest.approx(trace_distance(b, a))
    assert 0 <= trace_distance(a, b) <= 1 + 1e-12
    assert mse(a, b) >= 0


@given(st.integers(0, 2**31 - 1), st.integers(0, 2**31 - 1),
       st.integers(0, 2**31 - 1))
@settings(max_examples=20, deadline=None)
def test_trace_distance_triangle_inequality(sa, sb, sc):
    a = states.random_density_matrix(1, 2, sa)
    b = states.random_density_matrix(1, 2, sb)
    c = states.random_density_matrix(1, 2, sc)
    assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12


def test_shape_mismatch_rejected():
    with pytest.raises(ValueError):
        mse(states.maximally_mixed(1), states.maximally_mixed(2))
