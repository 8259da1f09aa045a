# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi eigensolver and the conditional-entropy
basis scan that dominates the discord optimization. Mirrors _kernels_py."""

import numpy as np

from libc.math cimport cos, fabs, log2, sin, sqrt

BACKEND_NAME = "compiled"

JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
PROB_FLOOR = 1e-12

cdef double _OFF_TOL = 1e-13
cdef int _MAX_SWEEPS = 100
cdef double _PROB_FLOOR = 1e-12


cdef inline double _cabs(double complex z) nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def jacobi_eigh(h):
    """Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi rotations.

    Returns (w, v) with eigenvalues w sorted descending and matching
    orthonormal eigenvector columns in v.
    """
    a_arr = np.array(h, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr

    cdef Py_ssize_t p, q, i, sweep
    cdef double off, absb, app, aqq, tau, t, c, sig
    cdef double complex b, s, sc, aip, aiq, vip, viq

    for sweep in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                absb = _cabs(a[p, q])
                if absb > off:
                    off = absb
        if off < _OFF_TOL:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                absb = _cabs(b)
                if absb < _OFF_TOL:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                tau = (aqq - app) / (2.0 * absb)
                if tau == 0.0:
                    t = 1.0
                elif tau > 0.0:
                    t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                sig = t * c
                s = sig * (b / absb)
                sc = s.conjugate()

                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = a[i, p]
                    aiq = a[i, q]
                    a[i, p] = c * aip - sc * aiq
                    a[i, q] = s * aip + c * aiq
                    a[p, i] = a[i, p].conjugate()
                    a[q, i] = a[i, q].conjugate()

                a[p, p] = c * c * app + sig * sig * aqq - 2.0 * c * sig * absb
                a[q, q] = sig * sig * app + c * c * aqq + 2.0 * c * sig * absb
                a[p, q] = 0.0
                a[q, p] = 0.0

                for i in range(n):
                    vip = v[i, p]
                    viq = v[i, q]
                    v[i, p] = c * vip - sc * viq
                    v[i, q] = s * vip + c * viq

    w = np.diagonal(a_arr).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v_arr[:, order]


cdef inline double _block_term(double complex m00, double complex m01,
                               double complex m11) nogil:
    """p * S(M / p) for a 2x2 PSD block M with p = tr M."""
    cdef double u = m00.real
    cdef double w = m11.real
    cdef double p = u + w
    if p < _PROB_FLOOR:
        return 0.0
    cdef double disc = 0.25 * (u - w) * (u - w) + m01.real * m01.real + m01.imag * m01.imag
    if disc < 0.0:
        disc = 0.0
    disc = sqrt(disc)
    cdef double half = 0.5 * p
    cdef double l1 = (half + disc) / p
    cdef double l2 = (half - disc) / p
    cdef double s = 0.0
    if l1 > 1.0:
        l1 = 1.0
    if l2 < 0.0:
        l2 = 0.0
    if 0.0 < l1 < 1.0:
        s -= l1 * log2(l1)
    if 0.0 < l2 < 1.0:
        s -= l2 * log2(l2)
    return p * s


def cond_entropy_grid(rho, int measured, thetas, phis):
    """Conditional entropy sum_i p_i S(rho_other^i) for a batch of projective bases.

    rho is a 4x4 two-qubit density matrix (qubit 0 = most significant bit),
    measured selects the qubit carrying the projectors (0 or 1), and
    thetas/phis are equal-length arrays of Bloch angles for the outcome-0
    projector.
    """
    if measured not in (0, 1):
        raise ValueError(f"measured qubit must be 0 or 1, got {measured}")
    r_arr = np.asarray(rho, dtype=np.complex128, order="C")
    t_arr = np.ascontiguousarray(thetas, dtype=np.float64)
    p_arr = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t g = t_arr.shape[0]
    out_arr = np.empty(g, dtype=np.float64)

    cdef double complex[:, ::1] r = r_arr
    cdef double[::1] tv = t_arr
    cdef double[::1] pv = p_arr
    cdef double[::1] out = out_arr

    # reduced state of the unmeasured qubit (independent of the basis)
    cdef double complex r00, r01, r11
    if measured == 0:
        r00 = r[0, 0] + r[2, 2]
        r01 = r[0, 1] + r[2, 3]
        r11 = r[1, 1] + r[3, 3]
    else:
        r00 = r[0, 0] + r[1, 1]
        r01 = r[0, 2] + r[1, 3]
        r11 = r[2, 2] + r[3, 3]

    cdef Py_ssize_t k, b, bp, a0, a1
    cdef double ct, st
    cdef double complex m0, m1, w, k00, k01, k11
    cdef double h

    for k in range(g):
        ct = cos(0.5 * tv[k])
        st = sin(0.5 * tv[k])
        m0 = ct
        m1 = (cos(pv[k]) + 1j * sin(pv[k])) * st
        # K0[b,bp] = sum_{a,ap} conj(m_a) rho[(a,b),(ap,bp)] m_ap
        if measured == 0:
            k00 = (m0.conjugate() * m0 * r[0, 0] + m0.conjugate() * m1 * r[0, 2]
                   + m1.conjugate() * m0 * r[2, 0] + m1.conjugate() * m1 * r[2, 2])
            k01 = (m0.conjugate() * m0 * r[0, 1] + m0.conjugate() * m1 * r[0, 3]
                   + m1.conjugate() * m0 * r[2, 1] + m1.conjugate() * m1 * r[2, 3])
            k11 = (m0.conjugate() * m0 * r[1, 1] + m0.conjugate() * m1 * r[1, 3]
                   + m1.conjugate() * m0 * r[3, 1] + m1.conjugate() * m1 * r[3, 3])
        else:
            k00 = (m0.conjugate() * m0 * r[0, 0] + m0.conjugate() * m1 * r[0, 1]
                   + m1.conjugate() * m0 * r[1, 0] + m1.conjugate() * m1 * r[1, 1])
            k01 = (m0.conjugate() * m0 * r[0, 2] + m0.conjugate() * m1 * r[0, 3]
                   + m1.conjugate() * m0 * r[1, 2] + m1.conjugate() * m1 * r[1, 3])
            k11 = (m0.conjugate() * m0 * r[2, 2] + m0.conjugate() * m1 * r[2, 3]
                   + m1.conjugate() * m0 * r[3, 2] + m1.conjugate() * m1 * r[3, 3])
        h = _block_term(k00, k01, k11)
        h += _block_term(r00 - k00, r01 - k01, r11 - k11)
        out[k] = h

    return out_arr
