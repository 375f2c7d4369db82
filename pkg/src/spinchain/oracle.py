"""Brute-force spin-space validator for small chains.

Builds the full 2^N-dimensional XY Hamiltonian with periodic boundaries,
the exact thermal state, the exact stroboscopic propagator, and partial
traces down to an adjacent pair of sites. Everything is dense and goes
through Hermitian eigendecompositions, so it shares no code path with the
momentum-space route it validates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams

MAX_SITES = 12

_SX = np.array([[0.0, 1.0], [1.0, 0.0]])
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]])
_ID = np.eye(2)
PAULI = {"i": _ID, "x": _SX, "y": _SY, "z": _SZ}


def build_dense(N, h, params: ModelParams):
    """Dense XY Hamiltonian at field h, periodic boundaries.

    H = sum_i (J/4)[(1+gamma) sx_i sx_{i+1} + (1-gamma) sy_i sy_{i+1}]
        - (h/2) sum_i sz_i

    Assembled by bit arithmetic on basis indices (site j maps to bit
    N-1-j, bit value 0 meaning sz = +1), which keeps construction O(N 4^N)
    with small constants.
    """
    if N % 2 != 0 or not 4 <= N <= MAX_SITES:
        raise ValueError(f"oracle supports even N in [4, {MAX_SITES}], got N={N}")
    J, g = params.J, params.gamma
    dim = 2**N
    H = np.zeros((dim, dim), dtype=complex)
    s = np.arange(dim)
    diag = np.zeros(dim)
    for i in range(N):
        j = (i + 1) % N
        bi = (s >> (N - 1 - i)) & 1
        bj = (s >> (N - 1 - j)) & 1
        flipped = s ^ ((1 << (N - 1 - i)) | (1 << (N - 1 - j)))
        # sx sx flips both bits with amplitude 1; sy sy flips both bits
        # with amplitude -1 when the bits are equal, +1 otherwise
        amp_xx = (J / 4.0) * (1 + g)
        amp_yy = (J / 4.0) * (1 - g) * np.where(bi == bj, -1.0, 1.0)
        H[flipped, s] += amp_xx + amp_yy
        diag -= (h / 2.0) * (1.0 - 2.0 * bi)
    H[s, s] += diag
    return H


def shift_operator(N):
    """One-site cyclic shift (translation) operator on N sites."""
    dim = 2**N
    S = np.zeros((dim, dim))
    for s in range(dim):
        # bit 0 = site 0 in the most-significant position
        shifted = ((s >> 1) | ((s & 1) << (N - 1))) & (dim - 1)
        S[shifted, s] = 1.0
    return S


@dataclass
class DenseChain:
    """Eigendecomposed half-cycle Hamiltonians of a small chain.

    Caches the spectral data of H(a) and H(b) so thermal states and the
    cycle propagator come from plain eigenbasis arithmetic.
    """

    N: int
    params: ModelParams

    def __post_init__(self):
        p = self.params
        Ha = build_dense(self.N, p.a, p)
        self.Ea, self.Va = np.linalg.eigh(Ha)
        if p.b == p.a:
            self.Eb, self.Vb = self.Ea, self.Va
        else:
            Hb = build_dense(self.N, p.b, p)
            self.Eb, self.Vb = np.linalg.eigh(Hb)

    def thermal_state(self):
        """exp(-beta H(a)) / Z as a dense matrix."""
        w = np.exp(-self.params.beta * (self.Ea - self.Ea.min()))
        w /= w.sum()
        return (self.Va * w) @ self.Va.conj().T

    def cycle_unitary(self):
        """U = exp(-i H(b) tau/2) exp(-i H(a) tau/2), cached after first use."""
        if getattr(self, "_U", None) is None:
            t2 = self.params.tau / 2.0
            Ua = (self.Va * np.exp(-1j * self.Ea * t2)) @ self.Va.conj().T
            Ub = (self.Vb * np.exp(-1j * self.Eb * t2)) @ self.Vb.conj().T
            self._U = Ub @ Ua
        return self._U

    def evolve(self, rho, n, U=None):
        """rho(n) = U^n rho U^dag^n by binary exponentiation of U."""
        if n < 0:
            raise ValueError("cycle count must be >= 0")
        if n == 0:
            return rho
        Un = _matrix_power(self.cycle_unitary() if U is None else U, n)
        return Un @ rho @ Un.conj().T


def _matrix_power(U, n):
    result = None
    base = U
    while n:
        if n & 1:
            result = base if result is None else result @ base
        n >>= 1
        if n:
            base = base @ base
    return result


def partial_trace_pair(rho, N, sites=(0, 1)):
    """Reduce a 2^N density matrix to the two sites given (0-based)."""
    i, j = sites
    dim = 2**N
    tensor = rho.reshape((2,) * (2 * N))
    keep = [i, j]
    traced = [s for s in range(N) if s not in keep]
    perm = keep + traced + [N + s for s in keep] + [N + s for s in traced]
    tensor = tensor.transpose(perm).reshape(4, dim // 4, 4, dim // 4)
    return np.einsum("abcb->ac", tensor)


def oracle_two_site(N, params: ModelParams, n, chain: DenseChain | None = None):
    """Exact two-site density matrix of adjacent sites after n cycles."""
    if n > 5000:
        raise ValueError("oracle cycle count capped at 5000")
    if chain is None:
        chain = DenseChain(N, params)
    rho = chain.evolve(chain.thermal_state(), n)
    return partial_trace_pair(rho, N)


def pair_correlators(rho2):
    """Magnetizations and spin-spin correlators of a two-site state."""
    out = {}
    for alpha in "xyz":
        out["m1" + alpha] = np.real(np.trace(np.kron(PAULI[alpha], _ID) @ rho2))
        out["m2" + alpha] = np.real(np.trace(np.kron(_ID, PAULI[alpha]) @ rho2))
    for alpha in "xyz":
        for beta_ in "xyz":
            out["t" + alpha + beta_] = np.real(
                np.trace(np.kron(PAULI[alpha], PAULI[beta_]) @ rho2)
            )
    return out
