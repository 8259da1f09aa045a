import numpy as np
import pytest

import oracles
from qcorr import linalg, states
from qcorr.states import PHI, PSI, StateFamily


def test_alpha_endpoints():
    assert states.alpha_from_concurrence(0.0) == 1.0
    assert abs(states.alpha_from_concurrence(1.0) - 1 / np.sqrt(2)) < 1e-15
    assert abs(states.alpha_from_concurrence(0.5) - 0.9659258262890683) < 1e-15


def test_alpha_monotone_and_range():
    grid = np.linspace(0.0, 1.0, 101)
    vals = [states.alpha_from_concurrence(c) for c in grid]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert all(1 / np.sqrt(2) - 1e-12 <= v <= 1.0 for v in vals)
    with pytest.raises(ValueError):
        states.alpha_from_concurrence(1.5)


def test_make_pure_supports():
    bell = states.make_pure(StateFamily(PHI, 1.0))
    assert np.allclose(bell.amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)])
    prod = states.make_pure(StateFamily(PSI, 0.0))
    assert np.allclose(prod.amplitudes, [0, 1, 0, 0])
    half = states.make_pure(StateFamily(PHI, 0.5))
    assert abs(half.amplitudes[0] - 0.9659258262890683) < 1e-15
    assert abs(half.amplitudes[3] - 0.25881904510252074) < 1e-15
    assert half.amplitudes[1] == half.amplitudes[2] == 0


def test_concurrence_round_trip():
    from qcorr import measures

    for kind in (PHI, PSI):
        for c in np.linspace(0.0, 1.0, 11):
            psi = states.make_pure(StateFamily(kind, c))
            rho = states.to_density(psi)
            assert abs(measures.concurrence(rho) - c) <= 1e-9
            # independent spectrum oracle, at its own (coarser) precision
            assert abs(oracles.concurrence(rho.matrix) - c) <= 1e-7


def test_reduced_entropy_matches_binary_entropy():
    for kind in (PHI, PSI):
        for c in (0.2, 0.5, 0.9):
            fam = StateFamily(kind, c)
            rho = states.to_density(states.make_pure(fam))
            a = states.alpha_from_concurrence(c)
            expected = linalg.binary_entropy(a * a)
            for q in (0, 1):
                s = linalg.von_neumann_entropy(linalg.partial_trace(rho.matrix, 2, [q]))
                assert abs(s - expected) <= 1e-9


def test_werner_endpoints_and_spectrum():
    pure = states.make_werner(1.0)
    assert abs(np.trace(pure.matrix @ pure.matrix).real - 1.0) < 1e-10
    mixed = states.make_werner(0.0)
    assert np.allclose(mixed.matrix, np.eye(4) / 4)
    w = states.make_werner(0.5)
    ev = np.sort(np.linalg.eigvalsh(w.matrix))[::-1]
    assert np.allclose(ev, [0.625, 0.125, 0.125, 0.125], atol=1e-12)


def test_werner_rejects_unentangled_seed():
    product = states.PureState(2, np.array([1, 0, 0, 0], dtype=complex))
    with pytest.raises(ValueError, match="maximally entangled"):
        states.make_werner(0.5, product)
    with pytest.raises(ValueError):
        states.make_werner(1.2)


def test_werner_uu_invariance_singlet():
    rng = np.random.default_rng(12)
    w = states.make_werner(0.7).matrix
    for _ in range(20):
        u = oracles.random_unitary(rng, 2)
        uu = np.kron(u, u)
        assert np.max(np.abs(uu @ w @ uu.conj().T - w)) <= 1e-10


def test_to_density_basics():
    ket00 = states.PureState(2, np.array([1, 0, 0, 0], dtype=complex))
    assert np.allclose(states.to_density(ket00).matrix, np.diag([1, 0, 0, 0]))
    bell = states.to_density(states.bell_state("phi_plus"))
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    assert np.allclose(bell.matrix, expected)
    half = states.to_density(states.make_pure(StateFamily(PHI, 0.5)))
    purity = np.trace(half.matrix @ half.matrix).real
    assert abs(purity - 1.0) <= 1e-10


def test_all_bell_states_maximally_entangled():
    for name in states.BELL_STATES:
        rho = states.to_density(states.bell_state(name))
        assert abs(oracles.concurrence(rho.matrix) - 1.0) < 1e-12


def test_validation_rejects_junk():
    with pytest.raises(ValueError):
        states.PureState(2, np.array([1, 1, 0, 0], dtype=complex))
    with pytest.raises(ValueError):
        states.StateFamily("GHZ", 0.5)
    with pytest.raises(ValueError):
        states.StateFamily(PHI, 1.5)
    with pytest.raises(ValueError):
        states.DensityMatrix(2, np.eye(4))  # trace 4
    skew = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)
    skew[0, 1] = 0.5
    with pytest.raises(ValueError):
        states.DensityMatrix(2, skew)


def test_density_matrix_labels_and_reduced():
    rho = states.to_density(states.bell_state("psi_minus"))
    assert rho.labels == ("A", "B")
    sub = rho.reduced([1])
    assert sub.labels == ("B",)
    assert np.allclose(sub.matrix, np.eye(2) / 2)
