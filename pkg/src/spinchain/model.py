"""Driven XY/Ising chain in momentum space: square-pulse protocol and k-grids.

Units: hbar = k_B = 1 and energies in units of the coupling J. All fields
(a, b), the period tau and the inverse temperature beta are dimensionless
ratios a/J, b/J, J*tau/hbar, J*beta.

Each momentum mode phi = phi_k lives in a 4-dimensional block spanned by
{|0,0>, |k,-k>, |k,0>, |0,-k>}. The dynamically active (even-parity) sector
is the first 2x2 block, written as

    H_even = c0*I + c1*sigma_y + c2*sigma_z,
    c0 = cos(phi), c1 = gamma*sin(phi), c2 = h - cos(phi).

The phase of |k,-k> is fixed so that the pairing term carries +gamma*sin(phi)
on sigma_y; the pair operators of evolution.py use the same convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

GL_PANEL_ORDER = 16  # points per composite Gauss-Legendre panel


@dataclass(frozen=True)
class ModelParams:
    """Full experiment configuration of the driven chain.

    a, b are the transverse fields in the first and second half-cycle,
    tau the driving period, beta the inverse temperature of the initial
    thermal state, gamma the XY anisotropy (1 = Ising) and J the coupling
    (kept explicit only as the unit scale).
    """

    a: float
    b: float
    tau: float
    beta: float = 20.0
    gamma: float = 1.0
    J: float = 1.0

    def __post_init__(self):
        if self.tau <= 0:
            raise ValueError(f"driving period must be positive, got tau={self.tau}")
        if self.beta < 0:
            raise ValueError(f"inverse temperature must be >= 0, got beta={self.beta}")
        if self.J <= 0:
            raise ValueError(f"coupling must be positive, got J={self.J}")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError(f"anisotropy must lie in [0, 1], got gamma={self.gamma}")


@dataclass(frozen=True)
class KMode:
    """A single momentum mode: angle phi in (0, pi] and its dphi-measure weight."""

    phi: float
    weight: float


@dataclass(frozen=True)
class KGrid:
    """Set of momentum modes with weights normalized to sum to pi.

    Mode sums of the form (1/N) sum_k f(phi_k) and thermodynamic-limit
    integrals (1/2pi) int_0^pi f dphi are both evaluated as
    sum(weights * f(phi)) / (2*pi).
    """

    phi: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "phi", np.asarray(self.phi, dtype=float))
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))
        if self.phi.shape != self.weights.shape:
            raise ValueError("phi and weights must have matching shapes")

    def __len__(self):
        return self.phi.size

    def modes(self):
        return [KMode(p, w) for p, w in zip(self.phi, self.weights)]

    def integrate(self, values):
        """Approximate int_0^pi f(phi) dphi for f sampled on the grid."""
        return float(np.dot(self.weights, np.asarray(values)))

    def mode_sum(self, values):
        """Evaluate (1/N) sum_k f(phi_k), resp. (1/2pi) int_0^pi f dphi."""
        return self.integrate(values) / (2.0 * np.pi)


def pulse_field(t, params: ModelParams):
    """Square-pulse field h(t): a in the first half-cycle, b in the second.

    For t <= 0 the field is a (the system is prepared in equilibrium at
    field a). Accepts scalars or arrays.
    """
    t = np.asarray(t, dtype=float)
    frac = np.mod(t, params.tau) / params.tau
    h = np.where((t <= 0) | (frac < 0.5), params.a, params.b)
    return h if h.ndim else float(h)


def block_coefficients(phi, h, gamma=1.0):
    """Pauli coefficients (c0, c1, c2) of the even-sector 2x2 Hamiltonian."""
    phi = np.asarray(phi, dtype=float)
    c0 = np.cos(phi)
    c1 = gamma * np.sin(phi)
    c2 = -np.cos(phi) + h
    return c0, c1, c2


def block_hamiltonian_4x4(phi, h, gamma=1.0):
    """4x4 mode Hamiltonian in the basis {|0,0>, |k,-k>, |k,0>, |0,-k>}.

    The even sector is c0*I + c1*sigma_y + c2*sigma_z; the odd sector is
    cos(phi) * I and is dynamically inert.
    """
    c0, c1, c2 = block_coefficients(phi, h, gamma)
    H = np.zeros((4, 4), dtype=complex)
    H[0, 0] = c0 + c2
    H[1, 1] = c0 - c2
    H[0, 1] = -1j * c1
    H[1, 0] = 1j * c1
    H[2, 2] = c0
    H[3, 3] = c0
    return H


def finite_kgrid(N):
    """Momentum grid phi_k = 2*pi*k/N, k = 1..N/2, for an N-site chain.

    Each mode carries weight 2*pi/N so that mode_sum() reproduces the
    lattice sums (1/N) sum_{k=1}^{N/2}.
    """
    if N % 2 != 0 or N < 4:
        raise ValueError(f"chain length must be even and >= 4, got N={N}")
    k = np.arange(1, N // 2 + 1)
    phi = 2.0 * np.pi * k / N
    weights = np.full(phi.shape, 2.0 * np.pi / N)
    return KGrid(phi, weights)


def thermo_kgrid(nodes=4096):
    """Composite Gauss-Legendre grid on [0, pi] for thermodynamic-limit integrals.

    The requested node count is rounded up to a multiple of the panel
    order. Weights sum to pi.
    """
    if nodes < GL_PANEL_ORDER:
        raise ValueError(f"need at least {GL_PANEL_ORDER} nodes, got {nodes}")
    panels = -(-nodes // GL_PANEL_ORDER)
    x, w = leggauss(GL_PANEL_ORDER)  # on [-1, 1]
    edges = np.linspace(0.0, np.pi, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    phi = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return KGrid(phi, weights)
