"""Pure-Python (numpy) implementations of the hot numeric kernels.

This module mirrors the compiled extension ``qcorr._kernels`` exactly:
same function names, same signatures, same conventions. Which one is in
use is decided once, at import time, in ``qcorr._backend``.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"

# Convergence threshold for off-diagonal magnitudes in the Jacobi sweep.
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

# Measurement outcomes below this probability contribute zero entropy.
PROB_FLOOR = 1e-12


def jacobi_eigh(h):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Returns (w, v) with eigenvalues w sorted descending and the matching
    orthonormal eigenvectors in the columns of v. The input is assumed
    Hermitian; only the Hermitian part is seen because updates keep the
    working copy Hermitian by construction.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    for _ in range(JACOBI_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            row = np.abs(a[p, p + 1:])
            if row.size:
                off = max(off, row.max())
        if off < JACOBI_OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                absb = abs(b)
                if absb < JACOBI_OFF_TOL:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * absb)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = np.sign(tau) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                sig = t * c
                s = sig * (b / absb)
                sc = np.conj(s)

                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - sc * aiq
                    a[i, q] = s * aip + c * aiq
                    a[p, i] = np.conj(a[i, p])
                    a[q, i] = np.conj(a[i, q])

                a[p, p] = c * c * app + sig * sig * aqq - 2.0 * c * sig * absb
                a[q, q] = sig * sig * app + c * c * aqq + 2.0 * c * sig * absb
                a[p, q] = 0.0
                a[q, p] = 0.0

                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - sc * viq
                    v[i, q] = s * vip + c * viq

    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _entropy2_terms(m, p):
    """Entropy contributions p_i * S(m_i / p_i) for stacked 2x2 PSD blocks."""
    u = m[..., 0, 0].real
    vdiag = m[..., 1, 1].real
    w = m[..., 0, 1]
    half = 0.5 * (u + vdiag)
    disc = np.sqrt(np.maximum(0.25 * (u - vdiag) ** 2 + (w * np.conj(w)).real, 0.0))
    lam = np.stack([half + disc, half - disc], axis=-1)

    mask = p > PROB_FLOOR
    safe_p = np.where(mask, p, 1.0)
    x = np.clip(lam / safe_p[..., None], 0.0, 1.0)
    xlog = np.where(x > 0.0, x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)
    s = -np.sum(xlog, axis=-1)
    return np.where(mask, p * s, 0.0)


def cond_entropy_grid(rho, measured, thetas, phis):
    """Conditional entropy sum_i p_i S(rho_other^i) for a batch of projective bases.

    rho is a 4x4 two-qubit density matrix (qubit 0 = most significant bit),
    measured selects the qubit carrying the projectors (0 or 1), and
    thetas/phis are equal-length arrays of Bloch angles for the outcome-0
    projector |m><m| with |m> = cos(t/2)|0> + e^{i phi} sin(t/2)|1>.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    phis = np.asarray(phis, dtype=np.float64)
    r4 = np.asarray(rho, dtype=np.complex128).reshape(2, 2, 2, 2)

    ct = np.cos(0.5 * thetas)
    st = np.sin(0.5 * thetas)
    ph = np.exp(1j * phis)
    m0 = np.stack([ct + 0j, ph * st], axis=-1)

    if measured == 0:
        red = np.einsum("abad->bd", r4)
        k0 = np.einsum("ga,abcd,gc->gbd", np.conj(m0), r4, m0)
    elif measured == 1:
        red = np.einsum("abcb->ac", r4)
        k0 = np.einsum("gb,abcd,gd->gac", np.conj(m0), r4, m0)
    else:
        raise ValueError(f"measured qubit must be 0 or 1, got {measured}")

    k1 = red[None, :, :] - k0
    p0 = np.einsum("gii->g", k0).real
    p1 = np.einsum("gii->g", k1).real
    return _entropy2_terms(k0, p0) + _entropy2_terms(k1, p1)
