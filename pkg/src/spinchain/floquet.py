"""Per-mode Floquet operator, quasi-energy band and derived quantities.

Every mode evolves in its even-parity 2x2 sector under the composition of
two half-cycle SU(2) rotations,

    U_F = exp(-i H(b) tau/2) exp(-i H(a) tau/2),

where H(h) = c1*sigma_y + c2*sigma_z is the traceless part of the mode
Hamiltonian. The identity coefficient c0 only contributes a global phase
exp(-i c0 tau), which cancels in every density-matrix conjugation and is
therefore dropped here. Quasi-energies are folded to the principal branch
eps_F * tau in [0, pi].

SU(2) elements are handled as quaternions (w, v): U = w*I - i v.sigma with
real w and real 3-vector v, so compositions and the quasi-energy extraction
cos(eps_F tau) = w are exact. This reproduces the standard composition rule

    cos(eps_F tau) = cos(eps_b tau/2) cos(eps_a tau/2)
                     - (n_a . n_b) sin(eps_b tau/2) sin(eps_a tau/2),

which is also used as a cross-check in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .model import KGrid, ModelParams, block_coefficients

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

DEGENERATE_TOL = 1e-12


@dataclass
class FloquetData:
    """One mode's Floquet operator and its rotation decomposition.

    U = exp(-i tau eps_F (axis . sigma)) up to the dropped identity phase;
    axis is meaningful only when `degenerate` is False (U proportional to
    the identity leaves the rotation axis undefined).
    """

    phi: float
    U: np.ndarray
    eps_F: float
    axis: np.ndarray
    degenerate: bool


def _rotation_quaternion(c1, c2, dt):
    """Quaternion (w, vy, vz) of exp(-i dt (c1 sigma_y + c2 sigma_z))."""
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    eps = np.hypot(c1, c2)
    theta = eps * dt
    w = np.cos(theta)
    # sin(theta)/eps * c -> dt * sinc handles eps -> 0
    fac = dt * np.sinc(theta / np.pi)
    return w, fac * c1, fac * c2


def _compose(qb, qa):
    """Quaternion product U_b U_a for rotations with x-component zero.

    The cross product of two vectors in the y-z plane points along x; for
    our generators (c1 on sigma_y, c2 on sigma_z) that x-component is
    n_b x n_a restricted to... it is (vb_y va_z - vb_z va_y) along x.
    """
    wb, yb, zb = qb
    wa, ya, za = qa
    w = wb * wa - (yb * ya + zb * za)
    vx = yb * za - zb * ya
    vy = wb * ya + wa * yb
    vz = wb * za + wa * zb
    return w, vx, vy, vz


def _floquet_quaternion(phi, params: ModelParams):
    """Quaternion of the full-cycle operator for an array of mode angles."""
    dt = params.tau / 2.0
    _, c1a, c2a = block_coefficients(phi, params.a, params.gamma)
    _, c1b, c2b = block_coefficients(phi, params.b, params.gamma)
    qa = _rotation_quaternion(c1a, c2a, dt)
    qb = _rotation_quaternion(c1b, c2b, dt)
    return _compose(qb, qa)


def quasi_energy(phi, params: ModelParams):
    """Folded quasi-energy eps_F(phi) in [0, pi/tau]; accepts arrays."""
    w, _, _, _ = _floquet_quaternion(phi, params)
    return np.arccos(np.clip(w, -1.0, 1.0)) / params.tau


def _quaternion_to_unitary(w, vx, vy, vz):
    return (
        w * np.eye(2, dtype=complex)
        - 1j * (vx * SIGMA_X + vy * SIGMA_Y + vz * SIGMA_Z)
    )


def half_cycle_unitary(phi, h, dt, gamma=1.0):
    """exp(-i H dt) for the traceless mode Hamiltonian at field h.

    The identity part c0 = cos(phi) is intentionally omitted; the full
    half-cycle operator is exp(-i c0 dt) times the returned matrix.
    """
    if dt <= 0:
        raise ValueError(f"duration must be positive, got dt={dt}")
    _, c1, c2 = block_coefficients(phi, h, gamma)
    w, vy, vz = _rotation_quaternion(c1, c2, dt)
    return _quaternion_to_unitary(w, 0.0, vy, vz)


def floquet_unitary(phi, params: ModelParams):
    """Compose the two half-cycle rotations into FloquetData for one mode."""
    w, vx, vy, vz = _floquet_quaternion(np.asarray(float(phi)), params)
    U = _quaternion_to_unitary(w, vx, vy, vz)
    eps_F = float(np.arccos(np.clip(w, -1.0, 1.0))) / params.tau
    vnorm = float(np.sqrt(vx**2 + vy**2 + vz**2))
    degenerate = vnorm < DEGENERATE_TOL
    if degenerate:
        axis = np.zeros(3)
    else:
        axis = np.array([vx, vy, vz], dtype=float) / vnorm
    return FloquetData(phi=float(phi), U=U, eps_F=eps_F, axis=axis,
                       degenerate=degenerate)


def band(params: ModelParams, grid: KGrid):
    """Quasi-energy sampled on a k-grid, folded to the first Floquet zone."""
    if len(grid) == 0:
        raise ValueError("empty k-grid")
    return grid.phi, quasi_energy(grid.phi, params)


def uniform_phi_grid(n_points=2048):
    """Uniformly spaced mode angles covering [0, pi], for finite differences."""
    return np.linspace(0.0, np.pi, n_points)


def group_velocity(params: ModelParams, phi=None):
    """|d eps_F / d phi| by central differences on a uniform phi grid."""
    if phi is None:
        phi = uniform_phi_grid()
    phi = np.asarray(phi, dtype=float)
    if phi.size < 256:
        raise ValueError("group velocity needs at least 256 grid points")
    spacing = np.diff(phi)
    if not np.allclose(spacing, spacing[0], rtol=1e-9, atol=1e-12):
        raise ValueError("group velocity requires a uniform phi grid")
    eps = quasi_energy(phi, params)
    vg = np.abs(np.gradient(eps, phi[1] - phi[0]))
    return phi, vg


def revival_time(N, params: ModelParams, n_points=2048):
    """Predicted first revival time T_r = N / (2 max |v_g|)."""
    if N < 8:
        raise ValueError(f"chain too short for a revival estimate, N={N}")
    _, vg = group_velocity(params, uniform_phi_grid(n_points))
    vmax = float(vg.max())
    if vmax < 1e-12:
        raise ValueError("flat Floquet band: no quasi-particle transport, "
                         "revival time undefined")
    return N / (2.0 * vmax)


@dataclass
class ZoneGapReport:
    """Minimum distance of eps_F * tau from the zone boundary {0, pi}."""

    min_gap: float
    phi: float
    is_crossing: bool


def band_crossings(params: ModelParams, grid: KGrid, tol=1e-6):
    """Locate the closest approach of the quasi-energy band to a zone boundary.

    The discrete minimum over the grid is refined by bounded scalar
    minimization; a crossing is reported when the refined gap falls below
    `tol`.
    """

    def gap(phi):
        theta = quasi_energy(phi, params) * params.tau
        return np.minimum(theta, np.pi - theta)

    phis = grid.phi
    gaps = gap(phis)
    i = int(np.argmin(gaps))
    lo = phis[max(i - 1, 0)]
    hi = phis[min(i + 1, len(phis) - 1)]
    best_phi, best_gap = phis[i], float(gaps[i])
    if hi > lo:
        res = minimize_scalar(lambda x: float(gap(np.asarray(x))),
                              bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12})
        if res.fun < best_gap:
            best_phi, best_gap = float(res.x), float(res.fun)
    return ZoneGapReport(min_gap=best_gap, phi=best_phi,
                         is_crossing=best_gap < tol)
