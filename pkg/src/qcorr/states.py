"""Initial-state constructors: pure Phi/Psi families and Werner mixtures.

The pure families live in fixed two-dimensional subspaces,

    Phi:  a|00> + sqrt(1 - a^2)|11>        Psi:  a|01> + sqrt(1 - a^2)|10>

with the amplitude a fixed by the requested concurrence, so every state
here is reproducible bit-exactly (all amplitudes real, non-negative).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg

PHI = "PHI"
PSI = "PSI"

NORM_TOL = 1e-12
DENSITY_HERM_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-10
BELL_TOL = 1e-10

BELL_STATES = ("phi_plus", "phi_minus", "psi_plus", "psi_minus")


@dataclass(frozen=True, eq=False)
class PureState:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amp.size != 2 ** self.n_qubits:
            raise ValueError(
                f"{self.n_qubits} qubits need {2 ** self.n_qubits} amplitudes, got {amp.size}"
            )
        norm = float(np.sum(np.abs(amp) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state not normalized: |psi|^2 = {norm!r}")
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    n_qubits: int
    matrix: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.complex128)
        dim = 2 ** self.n_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
        asym = np.max(np.abs(m - m.conj().T))
        if asym > DENSITY_HERM_TOL:
            raise ValueError(f"density matrix not Hermitian: max asymmetry {asym:.3e}")
        tr = np.trace(m).real
        if abs(tr - 1.0) > DENSITY_TRACE_TOL:
            raise ValueError(f"density matrix trace {tr!r} != 1")
        w = linalg.hermitian_eigensystem(m).eigenvalues
        if w.min() < -linalg.EIG_CLIP:
            raise ValueError(f"density matrix not PSD: eigenvalue {w.min():.3e}")
        default = {2: ("A", "B"), 3: ("A", "B", "E"), 4: ("A", "B", "E_A", "E_B")}
        labels = tuple(self.labels) if self.labels else default.get(
            self.n_qubits, tuple(f"Q{i}" for i in range(self.n_qubits))
        )
        if len(labels) != self.n_qubits:
            raise ValueError(f"need {self.n_qubits} subsystem labels, got {labels}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "labels", labels)

    def reduced(self, keep) -> "DensityMatrix":
        """Partial trace onto the listed qubits, keeping their labels."""
        keep = list(keep)
        sub = linalg.partial_trace(self.matrix, self.n_qubits, keep)
        return DensityMatrix(
            n_qubits=len(keep),
            matrix=sub,
            labels=tuple(self.labels[q] for q in keep),
        )


@dataclass(frozen=True)
class StateFamily:
    kind: str
    c_in: float

    def __post_init__(self):
        if self.kind not in (PHI, PSI):
            raise ValueError(f"family kind must be {PHI!r} or {PSI!r}, got {self.kind!r}")
        if not 0.0 <= self.c_in <= 1.0:
            raise ValueError(f"initial concurrence must lie in [0, 1], got {self.c_in!r}")


def alpha_from_concurrence(c_in: float) -> float:
    """Amplitude a = sqrt((1 + sqrt(1 - c^2)) / 2) of the Phi/Psi families."""
    if not 0.0 <= c_in <= 1.0:
        raise ValueError(f"concurrence must lie in [0, 1], got {c_in!r}")
    return float(np.sqrt((1.0 + np.sqrt(1.0 - c_in * c_in)) / 2.0))


def make_pure(family: StateFamily) -> PureState:
    """Two-qubit pure state of the given family with the requested concurrence."""
    a = alpha_from_concurrence(family.c_in)
    b = float(np.sqrt(max(0.0, 1.0 - a * a)))
    amp = np.zeros(4, dtype=np.complex128)
    if family.kind == PHI:
        amp[0b00] = a
        amp[0b11] = b
    else:
        amp[0b01] = a
        amp[0b10] = b
    return PureState(n_qubits=2, amplitudes=amp)


def bell_state(name: str) -> PureState:
    """One of the four Bell states by name (phi_plus, phi_minus, psi_plus, psi_minus)."""
    s = 1.0 / np.sqrt(2.0)
    table = {
        "phi_plus": [s, 0, 0, s],
        "phi_minus": [s, 0, 0, -s],
        "psi_plus": [0, s, s, 0],
        "psi_minus": [0, s, -s, 0],
    }
    if name not in table:
        raise ValueError(f"unknown Bell state {name!r}; choose from {BELL_STATES}")
    return PureState(n_qubits=2, amplitudes=np.array(table[name], dtype=np.complex128))


def _pure_concurrence(psi: PureState) -> float:
    # |<psi|sigma_y x sigma_y|psi*>| = 2|a d - b c| for amplitudes (a,b,c,d)
    a, b, c, d = psi.amplitudes
    return float(2.0 * abs(a * d - b * c))


def make_werner(eta: float, bell: PureState | None = None) -> DensityMatrix:
    """Werner mixture eta |bell><bell| + (1 - eta)/4 I of a maximally entangled state."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must lie in [0, 1], got {eta!r}")
    if bell is None:
        bell = bell_state("psi_minus")
    if bell.n_qubits != 2 or abs(_pure_concurrence(bell) - 1.0) > BELL_TOL:
        raise ValueError("Werner construction needs a maximally entangled two-qubit state")
    proj = np.outer(bell.amplitudes, bell.amplitudes.conj())
    m = eta * proj + (1.0 - eta) / 4.0 * np.eye(4, dtype=np.complex128)
    return DensityMatrix(n_qubits=2, matrix=m, labels=("A", "B"))


def to_density(psi: PureState, labels: tuple = ()) -> DensityMatrix:
    """Rank-1 projector |psi><psi| as a DensityMatrix."""
    m = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(n_qubits=psi.n_qubits, matrix=m, labels=labels)


def as_density_matrix(rho, n_qubits: int | None = None) -> DensityMatrix:
    """Coerce a DensityMatrix, PureState, or bare matrix to a validated DensityMatrix."""
    if isinstance(rho, DensityMatrix):
        return rho
    if isinstance(rho, PureState):
        return to_density(rho)
    m = np.asarray(rho, dtype=np.complex128)
    if n_qubits is None:
        n_qubits = int(round(np.log2(m.shape[0])))
    return DensityMatrix(n_qubits=n_qubits, matrix=m)
