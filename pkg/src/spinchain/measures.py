"""Two-qubit correlation measures and state-distance diagnostics.

Concurrence is the Wootters spin-flip measure; quantum discord minimizes
the measured conditional entropy over rank-1 projective measurements on
the second qubit. All entropies are base 2 (discord in bits). The trace
distance follows d = Tr sqrt(dR^dag dR) with no 1/2 prefactor, so a pair
of orthogonal pure states is at distance 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

_SY2 = np.kron(
    np.array([[0.0, -1.0j], [1.0j, 0.0]]), np.array([[0.0, -1.0j], [1.0j, 0.0]])
)
_PAULI = [
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
]

STATE_TOL = 1e-8


def _check_state(rho, dim=None):
    rho = np.asarray(rho, dtype=complex)
    if dim is not None and rho.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=STATE_TOL):
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > STATE_TOL:
        raise ValueError("density matrix does not have unit trace")
    if np.linalg.eigvalsh(rho).min() < -STATE_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix."""
    rho = _check_state(rho, dim=4)
    rho_tilde = _SY2 @ rho.conj() @ _SY2
    evals = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sqrt(np.clip(evals.real, 0.0, None))
    lam[::-1].sort()
    return max(0.0, lam[0] - lam[1] - lam[2] - lam[3])


def _binary_entropy_from_r(r):
    """Entropy in bits of a qubit with Bloch-vector length r (vectorized)."""
    r = np.clip(r, 0.0, 1.0)
    p = np.stack([(1.0 + r) / 2.0, (1.0 - r) / 2.0])
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(p), 0.0)
    return -terms.sum(axis=0)


def von_neumann_entropy(rho):
    """Entropy in bits of a density matrix of any dimension."""
    w = np.linalg.eigvalsh(rho)
    w = np.clip(w.real, 0.0, None)
    w = w[w > 0.0]
    return float(-(w * np.log2(w)).sum())


def _bloch_decomposition(rho):
    """Local Bloch vectors and 3x3 correlation matrix of a two-qubit state."""
    ma = np.array([np.trace(rho @ np.kron(s, np.eye(2))).real for s in _PAULI])
    mb = np.array([np.trace(rho @ np.kron(np.eye(2), s)).real for s in _PAULI])
    T = np.array(
        [[np.trace(rho @ np.kron(sa, sb)).real for sb in _PAULI] for sa in _PAULI]
    )
    return ma, mb, T


def _conditional_entropy(theta, phi_ang, ma, mb, T):
    """Measured conditional entropy for projectors along (theta, phi) on B.

    Closed form in the Bloch picture: measuring n and -n gives outcome
    probabilities p+- = (1 +- m_B.n)/2 and conditional Bloch vectors
    (m_A +- T n)/(2 p+-). Vectorized over measurement angles.
    """
    st, ct = np.sin(theta), np.cos(theta)
    n = np.stack([st * np.cos(phi_ang), st * np.sin(phi_ang), ct * np.ones_like(phi_ang)])
    p_plus = np.clip((1.0 + mb @ n) / 2.0, 0.0, 1.0)
    p_minus = 1.0 - p_plus
    Tn = T @ n
    with np.errstate(divide="ignore", invalid="ignore"):
        r_plus = np.linalg.norm(ma[:, None] + Tn, axis=0) / np.where(
            p_plus > 0, 2.0 * p_plus, 1.0
        )
        r_minus = np.linalg.norm(ma[:, None] - Tn, axis=0) / np.where(
            p_minus > 0, 2.0 * p_minus, 1.0
        )
    return p_plus * _binary_entropy_from_r(r_plus) + p_minus * _binary_entropy_from_r(
        r_minus
    )


def quantum_discord(rho, grid_size=64, refine_tol=1e-8):
    """Quantum discord (bits) with measurement on the second qubit.

    The minimization over rank-1 projective measurements runs a uniform
    grid over the measurement Bloch angles followed by Nelder-Mead
    refinement; ties on the grid break toward the lowest theta, then the
    lowest phi.
    """
    rho = _check_state(rho, dim=4)
    ma, mb, T = _bloch_decomposition(rho)
    rho_b = np.array(
        [[rho[0, 0] + rho[2, 2], rho[0, 1] + rho[2, 3]],
         [rho[1, 0] + rho[3, 2], rho[1, 1] + rho[3, 3]]]
    )
    s_b = von_neumann_entropy(rho_b)
    s_ab = von_neumann_entropy(rho)

    thetas = np.linspace(0.0, np.pi, grid_size)
    phis = np.linspace(0.0, 2.0 * np.pi, grid_size, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    vals = _conditional_entropy(tt.ravel(), pp.ravel(), ma, mb, T)
    best = int(np.argmin(vals))  # argmin returns the first (lowest theta/phi) tie

    res = minimize(
        lambda x: float(_conditional_entropy(x[0], np.asarray([x[1]]), ma, mb, T)[0]),
        x0=[tt.ravel()[best], pp.ravel()[best]],
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": refine_tol},
    )
    cond = min(float(vals[best]), float(res.fun))
    return max(0.0, s_b - s_ab + cond)


def trace_distance(rho_a, rho_b, normalized=False):
    """Sum of singular values of rho_a - rho_b (halved when normalized)."""
    rho_a = np.asarray(rho_a, dtype=complex)
    rho_b = np.asarray(rho_b, dtype=complex)
    if rho_a.shape != rho_b.shape:
        raise ValueError("states must have equal dimensions")
    d = float(np.linalg.svd(rho_a - rho_b, compute_uv=False).sum())
    return d / 2.0 if normalized else d


def purity(rho):
    """Tr(rho^2)."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.einsum("ij,ji->", rho, rho).real)


@dataclass
class PowerLawFit:
    """Least-squares fit of d = A n^-B on the log-log tail of a series."""

    A: float
    B: float
    window: tuple
    residual: float


def fit_power_law(n, d, block=10, tail_fraction=0.25):
    """Fit d = A n^-B over the series tail.

    The series is block-averaged over consecutive windows of `block`
    cycles to suppress stroboscopic oscillations, then fit by least
    squares on (log n, log d) over the window [n_max * tail_fraction,
    n_max]. Only strictly positive block means enter the fit.
    """
    n = np.asarray(n, dtype=float)
    d = np.asarray(d, dtype=float)
    if n.size != d.size:
        raise ValueError("n and d must have equal length")
    if np.count_nonzero(d > 0) < 20:
        raise ValueError("need at least 20 positive points for a power-law fit")
    nblk = n.size // block
    nb = n[: nblk * block].reshape(nblk, block).mean(axis=1)
    db = d[: nblk * block].reshape(nblk, block).mean(axis=1)
    lo = n.max() * tail_fraction
    mask = (nb >= lo) & (db > 0.0)
    if mask.sum() < 4:
        raise ValueError("converged below floor: no positive tail to fit")
    x = np.log(nb[mask])
    y = np.log(db[mask])
    slope, intercept = np.polyfit(x, y, 1)
    resid = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
    return PowerLawFit(
        A=float(np.exp(intercept)),
        B=float(-slope),
        window=(float(nb[mask].min()), float(nb[mask].max())),
        residual=resid,
    )
