"""Thermal mode states, stroboscopic evolution and two-site correlators.

Per mode, the thermal 4x4 block is evolved by conjugating its even-parity
2x2 sector with powers of the Floquet operator; the odd sector is inert.
The nearest-neighbor fermionic contractions

    G  = <B_l A_{l+1}>,  G' = <A_l B_{l+1}>,
    Q  = <A_l A_{l+1}>,  S  = <B_l B_{l+1}>,

are mode sums of traces of the pair operators X_K = c+c+ - cc,
X_K' = c+c+ + cc and m_z = n_k + n_{-k} - 1 against the evolved blocks,
with trigonometric prefactors. In the phase convention of model.py the
even-sector matrices are X_K = -sigma_x, X_K' = i sigma_y and
m_z = -sigma_z, so everything reduces to Bloch-vector components of the
evolved 2x2 sector:

    G   = sum_k w_k [ 2 sin(phi) <sigma_y> + 2 cos(phi) m_z^k ]
    G'  = sum_k w_k [ 2 sin(phi) <sigma_y> - 2 cos(phi) m_z^k ]
    Q,S = -/+ finite-size constant - i * sum_k w_k 2 sin(phi) <sigma_x>

(w_k = lattice/quadrature weight over 2 pi). The spin correlators follow
from the Wick contractions: txx = G, tyy = -G', txy = tyx, and
tzz = mz^2 + G G' - Q S with mz = G_{l,l} (the average magnetization is
the on-site contraction itself, not half of it).

Long-time steady states come from dephasing each mode in its Floquet
eigenbasis, which equals the n -> infinity limit of the oscillatory mode
integrals; modes whose Floquet operator is proportional to the identity
never dephase and keep their coherences.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .floquet import FloquetData, SIGMA_X, SIGMA_Y, SIGMA_Z, _floquet_quaternion
from .model import KGrid, ModelParams, block_coefficients, thermo_kgrid

DEGENERATE_SIN_TOL = 1e-12
POSITIVITY_CLIP = 1e-10

QUADRATURE_START = 4096
QUADRATURE_TOL = 1e-9
QUADRATURE_CAP = 2**20


class QuadratureError(RuntimeError):
    """Raised when node doubling fails to converge the mode integrals."""


@dataclass
class BlockState:
    """4x4 density matrix of one momentum block."""

    phi: float
    rho: np.ndarray


@dataclass(frozen=True)
class CorrelatorSet:
    """Magnetization, fermionic contractions and spin correlators at one cycle.

    The anomalous contractions are intrinsically imaginary and equal,
    <A_l A_{l+1}> = <B_l B_{l+1}> = i*q; they are reported as the real
    scalars Q = -q and S = +q so that the closing relations
    txy = -Q and tzz = mz^2 + Gp*G - Q*S hold with real entries. (Their
    finite-size real offset +-sum_k w 2cos(phi) is folded into tzz
    exactly but not into the reported Q, S.)
    """

    mz: float
    G: float
    Gp: float
    Q: float
    S: float
    txx: float
    tyy: float
    tzz: float
    txy: float

    def as_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _thermal_even_block(phi, h, beta, gamma):
    """Even-sector 2x2 thermal blocks and odd/even partition weights.

    Returns (rho_e, p_odd, Z) for arrays of phi, where rho_e carries the
    unnormalized even-sector Boltzmann weights divided by the full 4x4
    partition function Z (per mode), and p_odd is the weight of each of
    the two odd states.
    """
    phi = np.asarray(phi, dtype=float)
    c0, c1, c2 = block_coefficients(phi, h, gamma)
    eps = np.hypot(c1, c2)
    # energies: even c0 -/+ eps, odd c0 (twice); shift by the block minimum
    p_minus = np.ones_like(eps)
    p_plus = np.exp(-2.0 * beta * eps)
    p_odd = np.exp(-beta * eps)
    Z = p_minus + p_plus + 2.0 * p_odd
    with np.errstate(invalid="ignore", divide="ignore"):
        ny = np.where(eps > 0, c1 / np.where(eps > 0, eps, 1.0), 0.0)
        nz = np.where(eps > 0, c2 / np.where(eps > 0, eps, 1.0), 0.0)
    half_sum = (p_minus + p_plus) / 2.0
    half_diff = (p_minus - p_plus) / 2.0
    rho_e = np.zeros(phi.shape + (2, 2), dtype=complex)
    rho_e[..., 0, 0] = (half_sum - half_diff * nz) / Z
    rho_e[..., 1, 1] = (half_sum + half_diff * nz) / Z
    rho_e[..., 0, 1] = (half_diff * 1j * ny) / Z
    rho_e[..., 1, 0] = (-half_diff * 1j * ny) / Z
    return rho_e, p_odd / Z, Z


def thermal_block(phi, a, beta, gamma=1.0):
    """Thermal 4x4 block exp(-beta H_k(a)) normalized to unit trace."""
    if beta < 0:
        raise ValueError("inverse temperature must be >= 0")
    rho_e, p_odd, _ = _thermal_even_block(np.asarray(float(phi)), a, beta, gamma)
    rho = np.zeros((4, 4), dtype=complex)
    rho[:2, :2] = rho_e
    rho[2, 2] = p_odd
    rho[3, 3] = p_odd
    return BlockState(phi=float(phi), rho=rho)


def evolve(state: BlockState, fdata: FloquetData, n):
    """Conjugate the even sector by U^n; the odd sector is untouched."""
    if n < 0:
        raise ValueError("cycle count must be >= 0")
    rho = state.rho.copy()
    Un = np.linalg.matrix_power(fdata.U, n)
    rho[:2, :2] = Un @ rho[:2, :2] @ Un.conj().T
    return BlockState(phi=state.phi, rho=rho)


# Pair operators in the block basis (even sector only; zero elsewhere).
X_K = np.zeros((4, 4), dtype=complex)
X_K[:2, :2] = -SIGMA_X
X_KP = np.zeros((4, 4), dtype=complex)
X_KP[:2, :2] = 1j * SIGMA_Y
M_Z = np.zeros((4, 4), dtype=complex)
M_Z[0, 0] = -1.0
M_Z[1, 1] = 1.0


def mode_expectations(state: BlockState):
    """Traces of (X_K, X_K', m_z) against a block state."""
    rho = state.rho
    return (
        complex(np.trace(X_K @ rho)),
        complex(np.trace(X_KP @ rho)),
        complex(np.trace(M_Z @ rho)).real,
    )


def _floquet_eigensystem(phi, params: ModelParams):
    """Eigenphase theta = eps_F*tau and eigenvectors of U_F per mode.

    Returns (theta, V, static) where V[..., :, j] is the eigenvector with
    eigenvalue exp(-/+ i theta) for j = 0/1, and `static` marks modes with
    U proportional to the identity (no dephasing, arbitrary basis).
    """
    w, vx, vy, vz = _floquet_quaternion(phi, params)
    theta = np.arccos(np.clip(w, -1.0, 1.0))
    vnorm = np.sqrt(vx**2 + vy**2 + vz**2)
    static = vnorm < DEGENERATE_SIN_TOL
    safe = np.where(static, 1.0, vnorm)
    nx, ny, nz = vx / safe, vy / safe, vz / safe
    # eigenvectors of n.sigma; branch on the sign of nz for stability
    V = np.zeros(theta.shape + (2, 2), dtype=complex)
    upper = nz >= 0
    norm_u = np.sqrt(2.0 * (1.0 + np.where(upper, nz, -nz)))
    vp0 = np.where(upper, 1.0 + nz, nx - 1j * ny) / norm_u
    vp1 = np.where(upper, nx + 1j * ny, 1.0 - nz) / norm_u
    V[..., 0, 0] = vp0
    V[..., 1, 0] = vp1
    V[..., 0, 1] = -np.conj(vp1)
    V[..., 1, 1] = np.conj(vp0)
    V[static] = np.eye(2)
    return theta, V, static


class ModeEnsemble:
    """Vectorized thermal + Floquet data for one parameter set on a k-grid.

    Precomputes, per mode, the evolved-observable decomposition
    <O>(n) = const + 2 Re[amp * exp(-2 i theta n)] in the Floquet
    eigenbasis, so correlators at any set of cycle counts (and the
    dephased steady state) are cheap reductions over the grid.
    """

    _OBSERVABLES = ("sx", "sy", "mzk")

    def __init__(self, params: ModelParams, grid: KGrid):
        self.params = params
        self.grid = grid
        phi = grid.phi
        rho_e, _, _ = _thermal_even_block(phi, params.a, params.beta, params.gamma)
        theta, V, static = _floquet_eigensystem(phi, params)
        self.theta = theta
        self.static = static
        Vh = np.conj(np.swapaxes(V, -1, -2))
        rho_t = Vh @ rho_e @ V
        ops = {"sx": SIGMA_X, "sy": SIGMA_Y, "mzk": -SIGMA_Z}
        self._const = {}
        self._amp = {}
        for name, op in ops.items():
            op_t = Vh @ op @ V
            const = (op_t[..., 0, 0] * rho_t[..., 0, 0]
                     + op_t[..., 1, 1] * rho_t[..., 1, 1]).real
            # coherence term carrying exp(-i(theta_0 - theta_1)n) = exp(-2i theta n)
            amp = op_t[..., 1, 0] * rho_t[..., 0, 1]
            self._const[name] = const
            self._amp[name] = amp

        w = grid.weights / (2.0 * np.pi)
        self._w_sin = w * 2.0 * np.sin(phi)
        self._w_cos = w * 2.0 * np.cos(phi)
        self._w_one = w * 2.0
        self.c_Q = float(self._w_cos.sum())
        # (ssy, scz, sq, mz) stacked so all four share one phase evaluation
        pairs = (("sy", self._w_sin), ("mzk", self._w_cos),
                 ("sx", self._w_sin), ("mzk", self._w_one))
        self._stack_const = np.array(
            [np.dot(wt, self._const[name]) for name, wt in pairs]
        )
        self._stack_coef = np.stack([wt * self._amp[name] for name, wt in pairs])

    def _observable_series(self, name, n, weights):
        """sum_k weights_k * <O_k>(n) for an array of cycle counts."""
        const = float(np.dot(weights, self._const[name]))
        coef = weights * self._amp[name]
        n = np.asarray(n)
        # chunked evaluation of sum_k coef_k exp(-2 i theta_k n)
        chunk = max(1, int(2**22 // max(self.theta.size, 1)))
        flat = n.ravel()
        res = np.empty(flat.shape, dtype=float)
        for i in range(0, flat.size, chunk):
            block = flat[i : i + chunk]
            phases = np.exp(-2j * np.outer(self.theta, block))
            res[i : i + chunk] = 2.0 * np.real(coef @ phases)
        return const + res.reshape(n.shape)

    def _raw_sums(self, n):
        n = np.asarray(n)
        chunk = max(1, int(2**22 // max(self.theta.size, 1)))
        flat = n.ravel()
        res = np.empty((4,) + flat.shape, dtype=float)
        for i in range(0, flat.size, chunk):
            block = flat[i : i + chunk]
            phases = np.exp(-2j * np.outer(self.theta, block))
            res[:, i : i + chunk] = 2.0 * np.real(self._stack_coef @ phases)
        res += self._stack_const[:, None]
        ssy, scz, sq, mz = (r.reshape(n.shape) for r in res)
        return ssy, scz, sq, mz

    def _steady_raw_sums(self):
        """n -> infinity limit: dephased modes keep only the constant part;
        static modes (U ~ identity) additionally keep their coherences."""
        out = []
        for name, weights in (
            ("sy", self._w_sin),
            ("mzk", self._w_cos),
            ("sx", self._w_sin),
            ("mzk", self._w_one),
        ):
            val = float(np.dot(weights, self._const[name]))
            if np.any(self.static):
                amp = self._amp[name][self.static]
                val += float(2.0 * np.real(np.dot(weights[self.static], amp)))
            out.append(val)
        return tuple(out)

    def _assemble(self, ssy, scz, sq, mz):
        G = ssy + scz
        Gp = ssy - scz
        tzz = mz**2 + Gp * G + sq**2 + self.c_Q**2
        return dict(
            mz=mz, G=G, Gp=Gp, Q=-sq, S=sq,
            txx=G, tyy=-Gp, tzz=tzz, txy=sq,
        )

    def correlator_series(self, n):
        """Correlators for an array of cycle counts; dict of arrays."""
        return self._assemble(*self._raw_sums(n))

    def correlators(self, n):
        vals = self._assemble(*(float(x) for x in self._raw_sums(int(n))))
        return CorrelatorSet(**{k: float(v) for k, v in vals.items()})

    def steady_state(self):
        vals = self._assemble(*self._steady_raw_sums())
        return CorrelatorSet(**{k: float(v) for k, v in vals.items()})


def _converged(make_values, start_nodes, tol, cap):
    """Double quadrature nodes until all returned values move < tol."""
    nodes = start_nodes
    prev = make_values(nodes)
    while True:
        nodes *= 2
        if nodes > cap:
            raise QuadratureError(
                f"mode integrals not converged to {tol} at {nodes // 2} nodes "
                f"(cap {cap})"
            )
        cur = make_values(nodes)
        delta = max(
            float(np.max(np.abs(np.asarray(cur[k]) - np.asarray(prev[k]))))
            for k in cur
        )
        if delta < tol:
            return cur, nodes
        prev = cur


def correlators_at_cycle(params: ModelParams, grid: KGrid | None, n,
                         tol=QUADRATURE_TOL):
    """Correlators after n cycles; converged quadrature when grid is None."""
    if grid is not None:
        return ModeEnsemble(params, grid).correlators(n)
    vals, _ = _converged(
        lambda m: ModeEnsemble(params, thermo_kgrid(m)).correlator_series(
            np.asarray([n])
        ),
        QUADRATURE_START, tol, QUADRATURE_CAP,
    )
    return CorrelatorSet(**{k: float(v[0]) for k, v in vals.items()})


def steady_state_correlators(params: ModelParams, grid: KGrid | None = None,
                             tol=QUADRATURE_TOL):
    """Dephased (diagonal-ensemble) correlators in the n -> infinity limit."""
    if grid is not None:
        return ModeEnsemble(params, grid).steady_state()
    vals, _ = _converged(
        lambda m: {k: np.asarray([v]) for k, v in
                   ModeEnsemble(params, thermo_kgrid(m)).steady_state()
                   .as_dict().items()},
        QUADRATURE_START, tol, QUADRATURE_CAP,
    )
    return CorrelatorSet(**{k: float(v[0]) for k, v in vals.items()})


def relaxation_series(params: ModelParams, n_max, grid: KGrid | None = None,
                      tol=QUADRATURE_TOL):
    """Correlators for n = 0..n_max plus the steady state.

    Returns (n, series_dict, steady CorrelatorSet). With grid=None the
    quadrature is node-doubled until the whole series is stable to tol.
    """
    n = np.arange(n_max + 1)
    if grid is not None:
        ens = ModeEnsemble(params, grid)
        return n, ens.correlator_series(n), ens.steady_state()

    def values(m):
        ens = ModeEnsemble(params, thermo_kgrid(m))
        vals = ens.correlator_series(n)
        vals["_steady"] = np.array(
            [getattr(ens.steady_state(), f.name) for f in fields(CorrelatorSet)]
        )
        return vals

    vals, _ = _converged(values, QUADRATURE_START, tol, QUADRATURE_CAP)
    steady_vec = vals.pop("_steady")
    steady = CorrelatorSet(**{
        f.name: float(x) for f, x in zip(fields(CorrelatorSet), steady_vec)
    })
    return n, vals, steady


def two_site_state(c: CorrelatorSet | dict):
    """Two-qubit X-state from a correlator set, with positivity repair.

    Eigenvalues in (-1e-10, 0) are clipped to zero and the state is
    renormalized; larger violations raise.
    """
    if isinstance(c, CorrelatorSet):
        c = c.as_dict()
    mz, txx, tyy, tzz, txy = (c[k] for k in ("mz", "txx", "tyy", "tzz", "txy"))
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = 1.0 + 2.0 * mz + tzz
    rho[1, 1] = 1.0 - tzz
    rho[2, 2] = 1.0 - tzz
    rho[3, 3] = 1.0 - 2.0 * mz + tzz
    rho[0, 3] = txx - tyy - 2j * txy
    rho[3, 0] = txx - tyy + 2j * txy
    rho[1, 2] = txx + tyy
    rho[2, 1] = txx + tyy
    rho *= 0.25
    evals, evecs = np.linalg.eigh(rho)
    if evals.min() < -POSITIVITY_CLIP:
        raise ValueError(
            f"two-site state not positive semidefinite: min eigenvalue "
            f"{evals.min():.3e}"
        )
    if evals.min() < 0.0:
        evals = np.clip(evals, 0.0, None)
        evals /= evals.sum()
        rho = (evecs * evals) @ evecs.conj().T
    return rho


def two_site_states_from_series(series):
    """Stack of two-site states for a correlator series dict."""
    keys = ("mz", "txx", "tyy", "tzz", "txy")
    arrays = {k: np.atleast_1d(series[k]) for k in keys}
    count = len(arrays["mz"])
    out = np.empty((count, 4, 4), dtype=complex)
    for i in range(count):
        out[i] = two_site_state({k: float(arrays[k][i]) for k in keys})
    return out
