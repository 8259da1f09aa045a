"""Phase- and amplitude-damping qubit channels and their isometric dilations.

Phase damping destroys coherences while leaving populations untouched;
amplitude damping moves the excited-state population to the environment.
Both are two-Kraus channels, so a single environment qubit initialized to
|0> suffices for an exact purification. Environments are appended after
the system qubits, giving the orderings (A, B, E) and (A, B, E_A, E_B).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityMatrix, PureState

PHASE = "PHASE"
AMPLITUDE = "AMPLITUDE"

COMPLETENESS_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class QubitChannel:
    kind: str
    strength: float
    kraus: tuple

    def __post_init__(self):
        if len(self.kraus) != 2:
            raise ValueError("channels here carry exactly two Kraus operators")
        total = sum(k.conj().T @ k for k in self.kraus)
        dev = np.max(np.abs(total - np.eye(2)))
        if dev > COMPLETENESS_TOL:
            raise ValueError(f"Kraus completeness violated: max deviation {dev:.3e}")


@dataclass(frozen=True, eq=False)
class DilationIsometry:
    """4x2 block V = K0 x |0>_E + K1 x |1>_E taking a qubit into qubit x environment."""

    matrix: np.ndarray


def _check_strength(x: float, name: str) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return float(x)


def phase_damping(lam: float) -> QubitChannel:
    """Dephasing channel: K0 = diag(1, sqrt(1-lam)), K1 = diag(0, sqrt(lam))."""
    lam = _check_strength(lam, "lambda")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - lam)]], dtype=np.complex128)
    k1 = np.array([[0.0, 0.0], [0.0, np.sqrt(lam)]], dtype=np.complex128)
    return QubitChannel(kind=PHASE, strength=lam, kraus=(k0, k1))


def amplitude_damping(gamma: float) -> QubitChannel:
    """Excitation-loss channel: K0 = diag(1, sqrt(1-gamma)), K1 = sqrt(gamma)|0><1|."""
    gamma = _check_strength(gamma, "gamma")
    k0 = np.array([[1.0, 0.0], [0.0, np.sqrt(1.0 - gamma)]], dtype=np.complex128)
    k1 = np.array([[0.0, np.sqrt(gamma)], [0.0, 0.0]], dtype=np.complex128)
    return QubitChannel(kind=AMPLITUDE, strength=gamma, kraus=(k0, k1))


def apply_two_qubit(
    rho: DensityMatrix,
    ch_a: QubitChannel | None,
    ch_b: QubitChannel | None,
) -> DensityMatrix:
    """Kraus sum over (K_i x K_j) rho (K_i x K_j)^dag; None means identity on that side."""
    if rho.n_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.n_qubits} qubits")
    eye = (np.eye(2, dtype=np.complex128),)
    ka = ch_a.kraus if ch_a is not None else eye
    kb = ch_b.kraus if ch_b is not None else eye
    out = np.zeros((4, 4), dtype=np.complex128)
    for ki in ka:
        for kj in kb:
            op = np.kron(ki, kj)
            out += op @ rho.matrix @ op.conj().T
    out = (out + out.conj().T) / 2.0
    return DensityMatrix(n_qubits=2, matrix=out, labels=rho.labels)


def dilate(ch: QubitChannel) -> DilationIsometry:
    """Isometric dilation of a two-Kraus channel onto qubit x environment-qubit."""
    e0 = np.array([[1.0], [0.0]], dtype=np.complex128)
    e1 = np.array([[0.0], [1.0]], dtype=np.complex128)
    v = np.kron(ch.kraus[0], e0) + np.kron(ch.kraus[1], e1)
    return DilationIsometry(matrix=v)


def purify_single(psi: PureState, ch: QubitChannel, target: str) -> PureState:
    """Pure (A, B, E) state of system plus the damped qubit's environment.

    Tracing out E recovers the one-sided Kraus action on |psi><psi|.
    """
    if psi.n_qubits != 2:
        raise ValueError("purify_single expects a two-qubit input state")
    if target not in ("A", "B"):
        raise ValueError(f"target must be 'A' or 'B', got {target!r}")
    amp = psi.amplitudes.reshape(2, 2)
    ks = np.stack(ch.kraus)  # (e, out, in)
    if target == "A":
        out = np.einsum("exa,ab->xbe", ks, amp)
    else:
        out = np.einsum("exb,ab->axe", ks, amp)
    return PureState(n_qubits=3, amplitudes=out.reshape(-1))


def purify_double(psi: PureState, ch_a: QubitChannel, ch_b: QubitChannel) -> PureState:
    """Pure (A, B, E_A, E_B) state for independent damping of both qubits."""
    if psi.n_qubits != 2:
        raise ValueError("purify_double expects a two-qubit input state")
    amp = psi.amplitudes.reshape(2, 2)
    ka = np.stack(ch_a.kraus)
    kb = np.stack(ch_b.kraus)
    out = np.einsum("exa,fyb,ab->xyef", ka, kb, amp)
    return PureState(n_qubits=4, amplitudes=out.reshape(-1))
