import numpy as np
import pytest

from tomolift import states


def test_cat_two_qubits():
    rho = states.make_cat_state(2)
    expected = np.zeros((4, 4))
    for i, j in [(0, 0), (0, 3), (3, 0), (3, 3)]:
        expected[i, j] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_cat_single_qubit_is_plus():
    np.testing.assert_allclose(states.make_cat_state(1), np.full((2, 2), 0.5),
                               atol=1e-15)


def test_cat_three_qubits_pure():
    rho = states.make_cat_state(3)
    assert abs(np.trace(rho).real - 1) < 1e-12
    assert abs(states.purity(rho) - 1) < 1e-10


def test_noon_two_qubits():
    rho = states.make_noon_state(2)
    expected = np.zeros((4, 4))
    for i, j in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        expected[i, j] = 0.5
    np.testing.assert_allclose(rho, expected, atol=1e-15)
    assert abs(states.purity(rho) - 1) < 1e-12


def test_noon_needs_two_qubits():
    with pytest.raises(ValueError):
        states.make_noon_state(1)


def test_w_three_qubits():
    rho = states.make_w_state(3)
    idx = [1, 2, 4]  # |001>, |010>, |100>
    for i in idx:
        for j in idx:
            assert abs(rho[i, j] - 1 / 3) < 1e-12
    assert abs(np.abs(rho).sum() - 3) < 1e-9  # nothing outside the block
    assert abs(np.trace(rho).real - 1) < 1e-12
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-15)


def test_w_two_qubits_equals_noon():
    np.testing.assert_allclose(states.make_w_state(2), states.make_noon_state(2),
                               atol=1e-15)


@pytest.mark.parametrize("n,rank,seed", [(1, 1, 0), (2, 4, 7), (3, 3, 11)])
def test_random_density_matrix_invariants(n, rank, seed):
    rho = states.random_density_matrix(n, rank, seed)
    states.check_density_matrix(rho)


def test_random_rank_one_is_pure():
    rho = states.random_density_matrix(2, 1, 5)
    assert abs(states.purity(rho) - 1) < 1e-12


def test_random_density_matrix_deterministic():
    a = states.random_density_matrix(2, 4, 7)
    b = states.random_density_matrix(2, 4, 7)
    assert (a == b).all()


def test_random_rank_validation():
    with pytest.raises(ValueError):
        states.random_density_matrix(2, 0, 1)
    with pytest.raises(ValueError):
        states.random_density_matrix(2, 5, 1)


def test_check_density_matrix_rejects_bad_inputs():
    with pytest.raises(ValueError):
        states.check_density_matrix(np.diag([0.6, 0.6]))  # trace 1.2
    with pytest.raises(ValueError):
        states.check_density_matrix(np.array([[0.5, 0.5], [0.4, 0.5]]))
    with pytest.raises(ValueError):
        states.check_density_matrix(np.diag([1.5, -0.5]))


def test_state_file_roundtrip(tmp_path):
    rho = states.random_density_matrix(2, 3, 123)
    path = tmp_path / "state.mat"
    states.save_state_file(rho, path)
    loaded = states.load_state_file(path)
    np.testing.assert_allclose(loaded, rho, atol=1e-15)
    header = path.read_text().splitlines()[0]
    assert header == "dim 4"


def test_state_file_rejects_malformed(tmp_path):
    path = tmp_path / "bad.mat"
    path.write_text("dim 2\n1+0i 0+0i\n")
    with pytest.raises(ValueError, match="rows"):
        states.load_state_file(path)
    path.write_text("2\n1+0i 0+0i\n0+0i 0+0i\n")
    with pytest.raises(ValueError, match="dim"):
        states.load_state_file(path)


def test_state_file_validates_invariants(tmp_path):
    path = tmp_path / "nonpsd.mat"
    path.write_text("dim 2\n1.5+0i 0+0i\n0+0i -0.5+0i\n")
    with pytest.raises(ValueError, match="eigenvalue"):
        states.load_state_file(path)
