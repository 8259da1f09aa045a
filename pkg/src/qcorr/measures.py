"""Correlation quantifiers for two-qubit states.

Entanglement: concurrence, entanglement of formation, negativity.
Entropic correlations: mutual information, one-way classical correlation,
quantum discord (infimum over rank-1 projective measurements), and the
symmetrized two-way discord. Geometric discord comes in a raw
Hilbert-Schmidt normalization and a rescaled one chosen so that pure
states satisfy negativity^2 == geometric discord.

The measured side of a state is always explicit: side "A" means the
projectors act on the first qubit, side "B" on the second. No arrow
notation is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from ._backend import kernels
from .states import DensityMatrix, as_density_matrix

SIDE_A = "A"
SIDE_B = "B"

# Discord optimizer: coarse grid resolution, then simplex refinement.
GRID_THETA = 32
GRID_PHI = 64
SIMPLEX_DIAMETER_TOL = 1e-8
SIMPLEX_MAX_ITER = 500

REPORT_CLIP = 1e-9

_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
_SYSY = np.kron(_SY, _SY)


def _mat2q(rho) -> np.ndarray:
    dm = as_density_matrix(rho)
    if dm.n_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {dm.n_qubits} qubits")
    return dm.matrix


def _side_index(side: str) -> int:
    if side == SIDE_A:
        return 0
    if side == SIDE_B:
        return 1
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


@dataclass(frozen=True, eq=False)
class MeasurementBasis:
    """Rank-1 projective basis on one qubit, parameterized on the Bloch sphere.

    Outcome 0 projects onto |m> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
    outcome 1 onto its orthogonal complement.
    """

    theta: float
    phi: float
    projectors: tuple = ()

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "phi", float(np.mod(self.phi, 2.0 * np.pi)))
        m0 = np.array(
            [np.cos(self.theta / 2), np.exp(1j * self.phi) * np.sin(self.theta / 2)],
            dtype=np.complex128,
        )
        m1 = np.array(
            [np.sin(self.theta / 2), -np.exp(1j * self.phi) * np.cos(self.theta / 2)],
            dtype=np.complex128,
        )
        pr = (np.outer(m0, m0.conj()), np.outer(m1, m1.conj()))
        object.__setattr__(self, "projectors", pr)


@dataclass(frozen=True)
class DiscordResult:
    """Discord value plus the optimizing basis and the optimizer's convergence flag."""

    value: float
    theta: float
    phi: float
    converged: bool
    raw: float


def concurrence(rho) -> float:
    """Wootters concurrence from the spectrum of sqrt(rho) rho~ sqrt(rho).

    rho~ = (sy x sy) rho* (sy x sy); the Hermitian product has the same
    spectrum as rho rho~ but stays inside the Hermitian eigensolver.
    """
    mat = _mat2q(rho)
    tilde = _SYSY @ mat.conj() @ _SYSY
    root = linalg.psd_sqrt(mat)
    m = root @ tilde @ root
    w = linalg.hermitian_eigensystem((m + m.conj().T) / 2.0).eigenvalues
    w = np.maximum(w, 0.0)
    # spectrum noise below the eigensolver's relative accuracy would get
    # amplified by the square root; genuine zeros must stay zero
    w[w < 1e-14 * w.max()] = 0.0
    sq = np.sqrt(w)
    c = sq[0] - sq[1] - sq[2] - sq[3]
    return float(min(max(c, 0.0), 1.0))


def eof(rho) -> float:
    """Entanglement of formation h((1 + sqrt(1 - C^2)) / 2) in bits."""
    c = concurrence(rho)
    return linalg.binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c))))


def mutual_information(rho) -> float:
    """Total correlations S(rho_A) + S(rho_B) - S(rho_AB) in bits."""
    mat = _mat2q(rho)
    sa = linalg.von_neumann_entropy(linalg.partial_trace(mat, 2, [0]))
    sb = linalg.von_neumann_entropy(linalg.partial_trace(mat, 2, [1]))
    sab = linalg.von_neumann_entropy(mat)
    return max(0.0, sa + sb - sab)


def conditional_entropy(rho, basis: MeasurementBasis, side: str) -> float:
    """sum_i p_i S(post-measurement state of the unmeasured qubit), in bits."""
    mat = _mat2q(rho)
    h = kernels.cond_entropy_grid(
        mat, _side_index(side), np.array([basis.theta]), np.array([basis.phi])
    )
    return float(h[0])


def _nelder_mead(f, simplex):
    """Minimize f over 2-vectors from the given 3 starting vertices.

    Deterministic: ties in the vertex ordering resolve by insertion order.
    Returns (best_value, best_point, converged).
    """
    pts = [np.array(p, dtype=float) for p in simplex]
    vals = [f(p) for p in pts]
    converged = False
    for _ in range(SIMPLEX_MAX_ITER):
        order = sorted(range(3), key=lambda i: (vals[i], i))
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        diameter = max(
            np.max(np.abs(pts[0] - pts[1])),
            np.max(np.abs(pts[0] - pts[2])),
            np.max(np.abs(pts[1] - pts[2])),
        )
        if diameter < SIMPLEX_DIAMETER_TOL:
            converged = True
            break
        centroid = (pts[0] + pts[1]) / 2.0
        refl = centroid + (centroid - pts[2])
        frefl = f(refl)
        if frefl < vals[0]:
            exp = centroid + 2.0 * (centroid - pts[2])
            fexp = f(exp)
            if fexp < frefl:
                pts[2], vals[2] = exp, fexp
            else:
                pts[2], vals[2] = refl, frefl
        elif frefl < vals[1]:
            pts[2], vals[2] = refl, frefl
        else:
            contr = centroid + 0.5 * (pts[2] - centroid)
            fcontr = f(contr)
            if fcontr < vals[2]:
                pts[2], vals[2] = contr, fcontr
            else:
                for i in (1, 2):
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0])
                    vals[i] = f(pts[i])
    order = sorted(range(3), key=lambda i: (vals[i], i))
    return vals[order[0]], pts[order[0]], converged


def _min_conditional_entropy(mat: np.ndarray, measured: int):
    """Two-stage infimum of the conditional entropy over projective bases.

    Stage 1 scans a theta-major grid on [0, pi/2] x [0, 2 pi); swapping the
    two projectors maps (theta, phi) -> (pi - theta, phi + pi), so the half
    theta range covers every measurement. Stage 2 refines by simplex from
    the best three grid points. Grid ties resolve to the lowest theta, then
    the lowest phi, so results are run-to-run identical.
    """
    thetas = np.linspace(0.0, np.pi / 2.0, GRID_THETA)
    phis = np.linspace(0.0, 2.0 * np.pi, GRID_PHI, endpoint=False)
    tt = np.repeat(thetas, GRID_PHI)
    pp = np.tile(phis, GRID_THETA)
    h = kernels.cond_entropy_grid(mat, measured, tt, pp)

    order = np.argsort(h, kind="stable")
    best = [np.array([tt[i], pp[i]]) for i in order[:3]]
    area = abs(
        (best[1][0] - best[0][0]) * (best[2][1] - best[0][1])
        - (best[2][0] - best[0][0]) * (best[1][1] - best[0][1])
    )
    if area < 1e-12:
        # collinear grid points: nudge the third vertex off the line
        step = np.array([np.pi / 2.0 / (GRID_THETA - 1), 2.0 * np.pi / GRID_PHI])
        best[2] = best[0] + 0.5 * step

    def objective(p):
        val = kernels.cond_entropy_grid(mat, measured, p[:1], p[1:2])
        return float(val[0])

    refined, point, converged = _nelder_mead(objective, best)
    grid_best = float(h[order[0]])
    if grid_best <= refined:
        return grid_best, float(tt[order[0]]), float(pp[order[0]]), converged
    return refined, float(point[0]), float(point[1]), converged


def classical_correlation(rho, side: str) -> float:
    """One-way classical correlation J = S(rho_unmeasured) - min_basis H, in bits."""
    mat = _mat2q(rho)
    measured = _side_index(side)
    s_other = linalg.von_neumann_entropy(linalg.partial_trace(mat, 2, [1 - measured]))
    hmin, _, _, _ = _min_conditional_entropy(mat, measured)
    return max(0.0, s_other - hmin)


def discord_full(rho, side: str) -> DiscordResult:
    """Quantum discord with optimizer diagnostics (best basis, convergence flag)."""
    mat = _mat2q(rho)
    measured = _side_index(side)
    s_meas = linalg.von_neumann_entropy(linalg.partial_trace(mat, 2, [measured]))
    s_all = linalg.von_neumann_entropy(mat)
    hmin, theta, phi, converged = _min_conditional_entropy(mat, measured)
    raw = s_meas - s_all + hmin
    return DiscordResult(
        value=max(0.0, raw), theta=theta, phi=phi, converged=converged, raw=raw
    )


def discord(rho, side: str) -> float:
    """Quantum discord with projectors on the given side, in bits."""
    return discord_full(rho, side).value


def symmetrized_discord(rho) -> float:
    """Two-way discord: the larger of the two one-way values."""
    return max(discord(rho, SIDE_A), discord(rho, SIDE_B))


def negativity(rho) -> float:
    """N = ||rho^{T_A}||_1 - 1, clipped to [0, 1]."""
    mat = _mat2q(rho)
    n = linalg.trace_norm_hermitian(linalg.partial_transpose(mat, 2, 0)) - 1.0
    return float(min(max(n, 0.0), 1.0))


def _bloch(mat: np.ndarray):
    paulis = (_SX, _SY, _SZ)
    x = np.array([np.trace(mat @ np.kron(s, np.eye(2))).real for s in paulis])
    y = np.array([np.trace(mat @ np.kron(np.eye(2), s)).real for s in paulis])
    t = np.array(
        [[np.trace(mat @ np.kron(si, sj)).real for sj in paulis] for si in paulis]
    )
    return x, y, t


def geometric_discord(rho, side: str, normalized: bool = True) -> float:
    """Closed-form geometric discord on the Bloch decomposition.

    The raw value is the minimal squared Hilbert-Schmidt distance to the
    classical-on-the-measured-side states, 1/4 (|x|^2 + |T|_F^2 - k_max).
    The normalized value doubles it so pure states obey N^2 == G_D.
    """
    mat = _mat2q(rho)
    x, y, t = _bloch(mat)
    if _side_index(side) == 0:
        vec, tmat = x, t
    else:
        vec, tmat = y, t.T
    k = np.outer(vec, vec) + tmat @ tmat.T
    kmax = linalg.hermitian_eigensystem(k).eigenvalues[0]
    raw = 0.25 * (vec @ vec + np.sum(t * t) - kmax)
    raw = max(0.0, float(raw))
    return 2.0 * raw if normalized else raw


@dataclass(frozen=True)
class CorrelationReport:
    """Every measure for one bipartition at one parameter point (one CSV row)."""

    bipartition: str
    concurrence: float
    eof: float
    discord_a: float
    discord_b: float
    discord_sym: float
    mutual_info: float
    negativity: float
    geo_discord: float
    geo_discord_raw: float


def _clip_report(v: float) -> float:
    return 0.0 if -REPORT_CLIP < v < 0.0 else v


def correlation_report(rho, bipartition: str = "") -> CorrelationReport:
    """Compute all measures for one two-qubit state.

    Geometric discord is reported with projectors on the second subsystem,
    matching the discord convention used in the conservation audits
    (conditional states of the first subsystem).
    """
    dm = as_density_matrix(rho)
    label = bipartition or "".join(dm.labels)
    da = discord(dm, SIDE_A)
    db = discord(dm, SIDE_B)
    vals = dict(
        concurrence=concurrence(dm),
        eof=eof(dm),
        discord_a=da,
        discord_b=db,
        discord_sym=max(da, db),
        mutual_info=mutual_information(dm),
        negativity=negativity(dm),
        geo_discord=geometric_discord(dm, SIDE_B),
        geo_discord_raw=geometric_discord(dm, SIDE_B, normalized=False),
    )
    return CorrelationReport(bipartition=label, **{k: _clip_report(v) for k, v in vals.items()})
