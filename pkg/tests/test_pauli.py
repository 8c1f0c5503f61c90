import numpy as np
import pytest

from tomolift import pauli, states


def test_enumerate_single_qubit():
    axes = [s.axes for s in pauli.enumerate_settings(1)]
    assert axes == ["X", "Y", "Z"]


def test_enumerate_two_qubits_order_and_count():
    settings = pauli.enumerate_settings(2)
    assert len(settings) == 9
    assert settings[0].axes == "XX"
    assert settings[-1].axes == "ZZ"
    assert [s.index for s in settings] == list(range(1, 10))


def test_enumerate_three_qubits_count():
    assert len(pauli.enumerate_settings(3)) == 27


def test_enumeration_is_bijective():
    settings = pauli.enumerate_settings(3)
    assert len({s.axes for s in settings}) == 27


@pytest.mark.parametrize("n", [0, 6, -1])
def test_qubit_count_range(n):
    with pytest.raises(ValueError):
        pauli.enumerate_settings(n)


def test_projector_z_plus():
    s = pauli.PauliSetting("Z", 3)
    p = pauli.projector(s, 1)
    np.testing.assert_allclose(p.q, [1, 0], atol=1e-15)


def test_projector_x_plus():
    p = pauli.projector(pauli.PauliSetting("X", 1), 1)
    np.testing.assert_allclose(p.q, [2**-0.5, 2**-0.5], atol=1e-15)


def test_projector_y_minus_is_eigenvector():
    # outcome 2 must be the -1 eigenvector of sigma_y
    p = pauli.projector(pauli.PauliSetting("Y", 2), 2)
    sigma_y = np.array([[0, -1j], [1j, 0]])
    np.testing.assert_allclose(sigma_y @ p.q, -p.q, atol=1e-12)
    np.testing.assert_allclose(p.q, [2**-0.5, -1j * 2**-0.5], atol=1e-15)


def test_projector_outcome_range():
    s = pauli.PauliSetting("ZZ", 9)
    with pytest.raises(ValueError):
        pauli.projector(s, 0)
    with pytest.raises(ValueError):
        pauli.projector(s, 5)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_povm_completeness(n):
    for s in pauli.enumerate_settings(n):
        total = sum(p.matrix() for p in pauli.setting_projectors(s))
        np.testing.assert_allclose(total, np.eye(2**n), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projectors_unit_norm_idempotent(n):
    for p in pauli.full_dictionary(n):
        assert abs(np.linalg.norm(p.q) - 1) < 1e-12
        m = p.matrix()
        assert np.abs(m @ m - m).max() < 1e-12
        assert abs(np.trace(m) - 1) < 1e-12


def test_born_cat_zz():
    rho = states.make_cat_state(2)
    s = [t for t in pauli.enumerate_settings(2) if t.axes == "ZZ"][0]
    np.testing.assert_allclose(pauli.born_probabilities(rho, s),
                               [0.5, 0, 0, 0.5], atol=1e-12)


def test_born_cat_xx():
    rho = states.make_cat_state(2)
    s = [t for t in pauli.enumerate_settings(2) if t.axes == "XX"][0]
    np.testing.assert_allclose(pauli.born_probabilities(rho, s),
                               [0.5, 0, 0, 0.5], atol=1e-12)


def test_born_maximally_mixed():
    rho = states.maximally_mixed(2)
    for s in pauli.enumerate_settings(2):
        np.testing.assert_allclose(pauli.born_probabilities(rho, s),
                                   np.full(4, 0.25), atol=1e-12)


def test_born_noon_zz():
    rho = states.make_noon_state(2)
    s = [t for t in pauli.enumerate_settings(2) if t.axes == "ZZ"][0]
    np.testing.assert_allclose(pauli.born_probabilities(rho, s),
                               [0, 0.5, 0.5, 0], atol=1e-12)


@pytest.mark.parametrize("n,seed", [(1, 0), (2, 1), (3, 2)])
def test_born_matches_materialized_projectors(n, seed):
    rho = states.random_density_matrix(n, 2**n, seed)
    for s in pauli.enumerate_settings(n):
        p = pauli.born_probabilities(rho, s)
        explicit = [np.trace(rho @ pr.matrix()).real
                    for pr in pauli.setting_projectors(s)]
        np.testing.assert_allclose(p, explicit, atol=1e-12)
        assert abs(p.sum() - 1) < 1e-9
        assert p.min() >= 0
