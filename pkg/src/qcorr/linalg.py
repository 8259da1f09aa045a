"""Dense complex linear algebra for small multi-qubit operators (dim <= 16).

Conventions used across the package:
  - qubit 0 is the leftmost tensor factor (most significant bit of the
    basis index),
  - all entropies are base 2, reported in bits,
  - eigenvalues in [-EIG_CLIP, 0) are treated as roundoff and clipped to 0;
    anything below -EIG_CLIP is a hard error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels

HERMITIAN_TOL = 1e-9
EIG_CLIP = 1e-8
TRACE_TOL = 1e-9
CLAMP_TOL = 1e-12


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Eigenvalues sorted descending with matching orthonormal column vectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def kron(a, b) -> np.ndarray:
    """Tensor (Kronecker) product of two square complex matrices."""
    return np.kron(_as_square(a), _as_square(b))


def partial_trace(rho, n_qubits: int, keep) -> np.ndarray:
    """Trace out all qubits not listed in ``keep`` (strictly increasing indices)."""
    rho = _as_square(rho)
    dim = 2 ** n_qubits
    if rho.shape[0] != dim:
        raise ValueError(
            f"dimension mismatch: matrix is {rho.shape[0]}x{rho.shape[0]}, "
            f"but {n_qubits} qubits require {dim}x{dim}"
        )
    keep = list(keep)
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if keep != sorted(set(keep)) or keep[0] < 0 or keep[-1] >= n_qubits:
        raise ValueError(f"keep must be strictly increasing in [0, {n_qubits}), got {keep}")

    traced = [q for q in range(n_qubits) if q not in keep]
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n_qubits])
    col = list(letters[n_qubits:2 * n_qubits])
    for q in traced:
        col[q] = row[q]
    out = "".join(row[q] for q in keep) + "".join(letters[n_qubits + q] for q in keep)
    spec = "".join(row) + "".join(col) + "->" + out
    t = np.einsum(spec, rho.reshape((2,) * (2 * n_qubits)))
    d = 2 ** len(keep)
    return t.reshape(d, d)


def partial_transpose(rho, n_qubits: int, subsystem: int) -> np.ndarray:
    """Transpose one qubit's indices, leaving the rest untouched."""
    rho = _as_square(rho)
    dim = 2 ** n_qubits
    if rho.shape[0] != dim:
        raise ValueError(f"dimension mismatch: got {rho.shape[0]}, expected {dim}")
    if not 0 <= subsystem < n_qubits:
        raise ValueError(f"subsystem index {subsystem} out of range for {n_qubits} qubits")
    t = rho.reshape((2,) * (2 * n_qubits))
    t = np.swapaxes(t, subsystem, n_qubits + subsystem)
    return t.reshape(dim, dim).copy()


def hermitian_eigensystem(h) -> EigenSystem:
    """Full eigensystem of a Hermitian matrix via the cyclic Jacobi kernel."""
    h = _as_square(h)
    asym = np.max(np.abs(h - h.conj().T))
    if asym > HERMITIAN_TOL:
        raise ValueError(f"matrix is not Hermitian: max |h - h^dag| = {asym:.3e}")
    w, v = kernels.jacobi_eigh((h + h.conj().T) / 2.0)
    return EigenSystem(eigenvalues=w, eigenvectors=v)


def _clip_spectrum(w: np.ndarray, what: str) -> np.ndarray:
    low = w.min() if w.size else 0.0
    if low < -EIG_CLIP:
        raise ValueError(f"{what}: eigenvalue {low:.3e} below -{EIG_CLIP:g}, not PSD")
    return np.maximum(w, 0.0)


def psd_sqrt(rho) -> np.ndarray:
    """Hermitian square root of a positive-semidefinite matrix."""
    es = hermitian_eigensystem(rho)
    w = _clip_spectrum(es.eigenvalues, "psd_sqrt")
    v = es.eigenvectors
    out = (v * np.sqrt(w)) @ v.conj().T
    return (out + out.conj().T) / 2.0


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr[rho log2 rho] in bits, with the 0 log 0 = 0 convention."""
    rho = _as_square(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise ValueError(f"not a unit-trace state: trace = {tr!r}")
    w = _clip_spectrum(hermitian_eigensystem(rho).eigenvalues, "von_neumann_entropy")
    w = w[w > 0.0]
    return float(-np.sum(w * np.log2(w)))


def binary_entropy(x: float) -> float:
    """h(x) = -x log2 x - (1-x) log2 (1-x)."""
    if x < -CLAMP_TOL or x > 1.0 + CLAMP_TOL:
        raise ValueError(f"binary_entropy argument {x!r} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def trace_norm_hermitian(h) -> float:
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigensystem(h).eigenvalues)))
