"""Canonical-ergodicity diagnostics for the driven chain.

The steady state of each local measure is compared against the family of
canonical Gibbs states of the time-averaged Hamiltonian, i.e. the static
chain at the mean field hbar0 = (a + b)/2 held at an arbitrary inverse
temperature beta-tilde. The ergodicity score

    eta = max{0, Q_S - max_{beta~} Q_G(beta~)}

is zero when some effective temperature reproduces (or exceeds) the
steady value, and positive when the driven steady state carries more of
the correlation measure than any canonical state can.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .evolution import (
    correlators_at_cycle,
    steady_state_correlators,
    two_site_state,
)
from .measures import concurrence, quantum_discord
from .model import ModelParams, thermo_kgrid

BETA_GRID_MIN = 0.01
BETA_GRID_MAX = 40.0
BETA_GRID_POINTS = 400

ETA_THRESHOLD = 1e-6

_MEASURES = {"concurrence": concurrence, "discord": quantum_discord}


def _measure_fn(measure):
    try:
        return _MEASURES[measure]
    except KeyError:
        raise ValueError(
            f"unknown measure {measure!r}; expected one of {sorted(_MEASURES)}"
        ) from None


def averaged_field(params: ModelParams):
    """Mean transverse field over one period of the equal-half-cycle pulse."""
    return (params.a + params.b) / 2.0


def default_beta_grid():
    """Logarithmic beta-tilde grid covering [0.01, 40] with 400 points."""
    return np.geomspace(BETA_GRID_MIN, BETA_GRID_MAX, BETA_GRID_POINTS)


@dataclass
class GibbsCurve:
    """A correlation measure along the canonical family at fixed mean field."""

    hbar0: float
    betas: np.ndarray
    values: np.ndarray
    measure: str
    gamma: float = 1.0


def gibbs_measure(hbar0, beta, measure, gamma=1.0, nodes=4096):
    """One point of the canonical curve: measure of the thermal pair state."""
    fn = _measure_fn(measure)
    params = ModelParams(a=hbar0, b=hbar0, tau=1.0, beta=float(beta), gamma=gamma)
    corr = correlators_at_cycle(params, thermo_kgrid(nodes), 0)
    return fn(two_site_state(corr))


def gibbs_curve(hbar0, beta_grid=None, measure="concurrence", gamma=1.0,
                nodes=4096):
    """Canonical measure curve Q_G(beta~) at mean field hbar0."""
    _measure_fn(measure)
    if beta_grid is None:
        beta_grid = default_beta_grid()
    betas = np.asarray(beta_grid, dtype=float)
    if betas.size == 0:
        raise ValueError("beta grid must be nonempty")
    if betas.size > 1 and not np.all(np.diff(betas) > 0):
        raise ValueError("beta grid must be strictly increasing")
    values = np.array(
        [gibbs_measure(hbar0, b, measure, gamma=gamma, nodes=nodes)
         for b in betas]
    )
    return GibbsCurve(hbar0=float(hbar0), betas=betas, values=values,
                      measure=measure, gamma=gamma)


def curve_max(curve: GibbsCurve, refine=True, nodes=4096):
    """(beta*, Q_G_max) of a canonical curve.

    The discrete grid maximum is refined by golden-section search in
    log(beta~) between the neighboring grid points; curves maximized at a
    grid endpoint (e.g. a saturating, monotone measure) skip refinement.
    """
    i = int(np.argmax(curve.values))
    beta_star = float(curve.betas[i])
    q_max = float(curve.values[i])
    if not refine or i == 0 or i == curve.betas.size - 1:
        return beta_star, q_max
    lo = np.log(curve.betas[i - 1])
    hi = np.log(curve.betas[i + 1])
    res = minimize_scalar(
        lambda x: -gibbs_measure(curve.hbar0, np.exp(x), curve.measure,
                                 gamma=curve.gamma, nodes=nodes),
        bounds=(lo, hi), method="bounded", options={"xatol": 1e-10},
    )
    if -res.fun > q_max:
        beta_star, q_max = float(np.exp(res.x)), float(-res.fun)
    return beta_star, q_max


def intersection_betas(curve: GibbsCurve, q_s):
    """Inverse temperatures where the canonical curve crosses a steady value.

    Sign changes of Q_G(beta~) - Q_S are located on the grid and resolved
    by linear interpolation; a complementary diagnostic to the max-based
    score (non-monotone curves can cross twice).
    """
    diff = curve.values - q_s
    out = []
    for i in range(diff.size - 1):
        lo, hi = diff[i], diff[i + 1]
        if lo == 0.0:
            out.append(float(curve.betas[i]))
        elif lo * hi < 0:
            frac = lo / (lo - hi)
            out.append(float(curve.betas[i]
                             + frac * (curve.betas[i + 1] - curve.betas[i])))
    if diff[-1] == 0.0:
        out.append(float(curve.betas[-1]))
    return np.array(out)


@dataclass
class ErgodicityReport:
    """Steady value vs canonical maximum for one driving period."""

    tau: float
    Q_S: float
    Q_G_max: float
    eta: float


def ergodicity_score(q_s, curve: GibbsCurve, tau=float("nan"), refine=True):
    """Clamped excess of the steady value over the canonical maximum."""
    if curve.betas.size == 0:
        raise ValueError("empty canonical curve")
    _, q_g_max = curve_max(curve, refine=refine)
    eta = max(0.0, q_s - q_g_max)
    return ErgodicityReport(tau=float(tau), Q_S=float(q_s),
                            Q_G_max=q_g_max, eta=eta)


def steady_measure(params: ModelParams, measure):
    """Measure of the dephased steady-state pair density matrix."""
    fn = _measure_fn(measure)
    corr = steady_state_correlators(params)
    return fn(two_site_state(corr))


def ergodicity_scan(a, b, tau_grid, measure, beta=20.0, gamma=1.0,
                    curve: GibbsCurve | None = None):
    """Ergodicity reports over a grid of driving periods at fixed (a, b).

    The canonical curve depends only on (a + b)/2 and is computed once
    (or supplied by the caller when scanning many field pairs).
    """
    taus = np.asarray(tau_grid, dtype=float)
    if taus.size == 0:
        raise ValueError("tau grid must be nonempty")
    if curve is None:
        hbar0 = (a + b) / 2.0
        curve = gibbs_curve(hbar0, measure=measure, gamma=gamma)
    reports = []
    for tau in taus:
        params = ModelParams(a=a, b=b, tau=float(tau), beta=beta, gamma=gamma)
        q_s = steady_measure(params, measure)
        reports.append(ergodicity_score(q_s, curve, tau=tau))
    return reports


def critical_tau(reports, threshold=ETA_THRESHOLD):
    """Period where the score last turns off, scanning tau upward.

    Returns the midpoint between the last tau with eta > threshold and
    the next grid point; None when eta vanishes on the whole grid, and
    the final tau when the score is still positive there.
    """
    etas = np.array([r.eta for r in reports])
    taus = np.array([r.tau for r in reports])
    order = np.argsort(taus)
    etas, taus = etas[order], taus[order]
    positive = np.nonzero(etas > threshold)[0]
    if positive.size == 0:
        return None
    last = positive[-1]
    if last == taus.size - 1:
        return float(taus[-1])
    return float((taus[last] + taus[last + 1]) / 2.0)


def critical_field(a, b_grid, tau_grid, measure, beta=20.0, gamma=1.0,
                   threshold=ETA_THRESHOLD):
    """Smallest second-half field above which the measure is ergodic.

    Scans b upward; for each b the full tau grid is scored against the
    canonical curve at (a + b)/2. Returns the midpoint between the last
    non-ergodic b and the first b with eta = 0 across all tau (None if
    every b is ergodic already, the last b if none is).
    """
    bs = np.asarray(b_grid, dtype=float)
    if bs.size == 0 or (bs.size > 1 and not np.all(np.diff(bs) > 0)):
        raise ValueError("b grid must be nonempty and strictly increasing")
    last_bad = None
    for b in bs:
        reports = ergodicity_scan(a, b, tau_grid, measure, beta=beta,
                                  gamma=gamma)
        if any(r.eta > threshold for r in reports):
            last_bad = b
        elif last_bad is not None:
            return float((last_bad + b) / 2.0)
    if last_bad is None:
        return None
    return float(bs[-1])
