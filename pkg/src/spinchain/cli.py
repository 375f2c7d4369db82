"""Experiment driver: config parsing, the five run families, CSV/JSON output.

Every run writes one or more CSV files (comma-separated, 17 significant
digits, header row) plus a manifest.json echoing the fully resolved
configuration, library version and wall time. Exit codes: 0 success,
2 validation/tolerance failure, 3 resource guard (size caps, quadrature
cap).

Config files are flat key=value text ('#' comments); command-line flags
override config values. Grids accept either comma lists ("0.3,0.7,0.9")
or start:stop:step ranges ("0.1:2.0:0.1", endpoint included when it
lands on the step).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

EXIT_OK = 0
EXIT_TOLERANCE = 2
EXIT_RESOURCE = 3

REVIVAL_WINDOW = 20  # cycles per amplitude window in the revival detector
REVIVAL_FACTOR = 1.5
KINK_GAP_TOL = 0.05  # zone gap below which a sweep point is flagged


# ---------------------------------------------------------------------------
# config handling

def _parse_scalar(text):
    text = text.strip()
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_grid(text):
    """Comma list or start:stop:step range -> float array."""
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError(f"range step must be positive, got {step}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(count)
    return np.array([float(p) for p in text.split(",") if p.strip()])


def parse_int_list(text):
    return [int(float(p)) for p in str(text).split(",") if p.strip()]


def read_config(path):
    """Flat key=value file -> dict (later keys win)."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = line.split("=", 1)
            out[key.strip()] = _parse_scalar(value)
    return out


_DEFAULTS = {
    "a": 1.4,
    "b": 0.0,
    "tau": 0.3,
    "beta": 20.0,
    "gamma": 1.0,
    "n_max": None,
    "nodes": 4096,
    "N": None,
    "out": ".",
    "threads": None,
    "tau_grid": None,
    "beta_grid": None,
    "b_grid": None,
    "measure": "both",
    "tuples": 6,
}

_FLAG_KEYS = ("a", "b", "tau", "beta", "gamma", "n_max", "nodes", "N",
              "out", "threads", "tau_grid", "measure")


def resolve_config(args):
    cfg = dict(_DEFAULTS)
    if args.config:
        cfg.update(read_config(args.config))
    for key in _FLAG_KEYS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if cfg["threads"] is None:
        env = os.environ.get("SPINCHAIN_THREADS")
        if env:
            cfg["threads"] = int(env)
    return cfg


def _model_params(cfg, **overrides):
    from .model import ModelParams

    vals = dict(a=float(cfg["a"]), b=float(cfg["b"]), tau=float(cfg["tau"]),
                beta=float(cfg["beta"]), gamma=float(cfg["gamma"]))
    vals.update(overrides)
    return ModelParams(**vals)


# ---------------------------------------------------------------------------
# output plumbing

def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(path, header, rows):
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return path


def write_manifest(outdir, command, cfg, outputs, started, extra=None):
    from . import __version__

    clean = {k: (v.tolist() if isinstance(v, np.ndarray) else v)
             for k, v in cfg.items()}
    manifest = {
        "command": command,
        "config": clean,
        "version": __version__,
        "elapsed_s": time.time() - started,
        "outputs": [os.path.basename(p) for p in outputs],
    }
    if extra:
        manifest.update(extra)
    path = os.path.join(outdir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, default=float)
        fh.write("\n")
    return path


def _outdir(cfg):
    path = str(cfg["out"])
    os.makedirs(path, exist_ok=True)
    return path


def _measure_series(states):
    from .measures import concurrence, quantum_discord

    conc = np.array([concurrence(r) for r in states])
    disc = np.array([quantum_discord(r) for r in states])
    return conc, disc


# ---------------------------------------------------------------------------
# revival

def detect_revival(n, values, window=REVIVAL_WINDOW, factor=REVIVAL_FACTOR):
    """First cycle where the windowed oscillation amplitude resurges.

    The series is cut into consecutive windows; a revival is the first
    window whose peak-to-peak amplitude exceeds `factor` times the
    running minimum amplitude, provided the amplitude has genuinely
    decayed first (running minimum below amp[0]/factor). Returns the
    window's starting cycle, or None.
    """
    values = np.asarray(values, dtype=float)
    nwin = values.size // window
    if nwin < 3:
        return None
    amp = np.ptp(values[: nwin * window].reshape(nwin, window), axis=1)
    run_min = amp[0]
    for i in range(1, nwin):
        decayed = run_min < amp[0] / factor
        if decayed and amp[i] > factor * run_min + 1e-12:
            return int(n[i * window])
        run_min = min(run_min, amp[i])
    return None


def cmd_revival(cfg):
    from .evolution import ModeEnsemble, two_site_states_from_series
    from .floquet import revival_time
    from .model import finite_kgrid

    sizes = cfg["N"]
    if sizes is None:
        sizes = [100, 150, 200]
    elif isinstance(sizes, (int, float)):
        sizes = [int(sizes)]
    else:
        sizes = parse_int_list(sizes)
    outdir = _outdir(cfg)
    started = time.time()
    params = _model_params(cfg)

    rows, summary = [], []
    for N in sizes:
        t_pred = revival_time(N, params)
        n_max = cfg["n_max"]
        if n_max is None:
            n_max = int(2.0 * t_pred / params.tau) + 4 * REVIVAL_WINDOW
        n_max = int(n_max)
        ens = ModeEnsemble(params, finite_kgrid(N))
        n = np.arange(n_max + 1)
        series = ens.correlator_series(n)
        states = two_site_states_from_series(series)
        conc, disc = _measure_series(states)
        rows.extend(zip([N] * n.size, n, conc, disc))
        n_det = detect_revival(n, conc)
        t_det = float("nan") if n_det is None else n_det * params.tau
        summary.append((N, t_det, t_pred))

    outputs = [
        write_csv(os.path.join(outdir, "revival.csv"),
                  ["N_sites", "n_cycles", "concurrence_ebits", "discord_bits"],
                  rows),
        write_csv(os.path.join(outdir, "revival_summary.csv"),
                  ["N_sites", "T_r_detected_per_J", "T_r_predicted_per_J"],
                  summary),
    ]
    outputs.append(write_manifest(outdir, "revival", cfg, outputs, started))
    return EXIT_OK


# ---------------------------------------------------------------------------
# relaxation

def cmd_relax(cfg):
    from .evolution import relaxation_series, two_site_state, \
        two_site_states_from_series
    from .measures import fit_power_law, trace_distance

    taus = (parse_grid(cfg["tau_grid"]) if cfg["tau_grid"] is not None
            else np.array([float(cfg["tau"])]))
    n_max = int(cfg["n_max"]) if cfg["n_max"] is not None else 5000
    outdir = _outdir(cfg)
    started = time.time()

    outputs, summary = [], []
    for tau in taus:
        params = _model_params(cfg, tau=float(tau))
        n, series, steady = relaxation_series(params, n_max)
        states = two_site_states_from_series(series)
        rho_s = two_site_state(steady)
        dist = np.array([trace_distance(r, rho_s) for r in states])
        conc, disc = _measure_series(states)
        outputs.append(write_csv(
            os.path.join(outdir, f"relax_tau{tau:g}.csv"),
            ["n_cycles", "concurrence_ebits", "discord_bits",
             "trace_distance"],
            zip(n, conc, disc, dist),
        ))
        try:
            fit = fit_power_law(n[1:], dist[1:])
            summary.append((tau, fit.A, fit.B, fit.window[0], fit.window[1],
                            fit.residual))
        except ValueError:
            summary.append((tau, float("nan"), float("nan"), float("nan"),
                            float("nan"), float("nan")))
    outputs.append(write_csv(
        os.path.join(outdir, "relax_summary.csv"),
        ["tau_J", "fit_A", "fit_B", "fit_n_lo", "fit_n_hi", "fit_residual"],
        summary,
    ))
    outputs.append(write_manifest(outdir, "relax", cfg, outputs, started))
    return EXIT_OK


# ---------------------------------------------------------------------------
# steady-state sweep

def find_kinks(tau, values, factor=8.0):
    """Periods where a curve's discrete curvature spikes.

    The second difference is compared against `factor` times its median
    absolute value; contiguous runs collapse to their largest spike.
    """
    tau = np.asarray(tau, dtype=float)
    values = np.asarray(values, dtype=float)
    if tau.size < 5:
        return np.array([])
    d2 = np.abs(np.diff(values, 2))
    floor = max(np.median(d2), 1e-12)
    hot = d2 > factor * floor
    kinks = []
    i = 0
    while i < hot.size:
        if hot[i]:
            j = i
            while j + 1 < hot.size and hot[j + 1]:
                j += 1
            k = i + int(np.argmax(d2[i : j + 1]))
            kinks.append(tau[k + 1])  # d2[k] is centered on tau[k+1]
            i = j + 1
        else:
            i += 1
    return np.array(kinks)


def cmd_sweep(cfg):
    from .evolution import steady_state_correlators, two_site_state
    from .floquet import band_crossings
    from .measures import concurrence, purity, quantum_discord
    from .model import thermo_kgrid

    if cfg["tau_grid"] is None:
        raise ValueError("sweep requires a tau_grid")
    taus = parse_grid(cfg["tau_grid"])
    outdir = _outdir(cfg)
    started = time.time()
    scan_grid = thermo_kgrid(2048)

    rows = []
    gaps = np.empty(taus.size)
    discs = np.empty(taus.size)
    for i, tau in enumerate(taus):
        params = _model_params(cfg, tau=float(tau))
        corr = steady_state_correlators(params)
        rho = two_site_state(corr)
        gap = band_crossings(params, scan_grid).min_gap
        gaps[i] = gap
        discs[i] = quantum_discord(rho)
        rows.append((tau, concurrence(rho), discs[i], purity(rho), gap,
                     gap < KINK_GAP_TOL))

    # local minima of the zone gap below tolerance = flagged crossings
    crossing_taus = [
        taus[i] for i in range(taus.size)
        if gaps[i] < KINK_GAP_TOL
        and (i == 0 or gaps[i] <= gaps[i - 1])
        and (i == taus.size - 1 or gaps[i] <= gaps[i + 1])
    ]
    kink_taus = find_kinks(taus, discs)
    summary = []
    for kt in kink_taus:
        nearest = (min(crossing_taus, key=lambda c: abs(c - kt))
                   if crossing_taus else float("nan"))
        summary.append((kt, nearest, abs(kt - nearest)))

    outputs = [
        write_csv(os.path.join(outdir, "sweep.csv"),
                  ["tau_J", "concurrence_ebits", "discord_bits", "purity",
                   "min_zone_gap_rad", "crossing_flag"],
                  rows),
        write_csv(os.path.join(outdir, "sweep_summary.csv"),
                  ["kink_tau_J", "nearest_crossing_tau_J", "distance_tau_J"],
                  summary),
    ]
    outputs.append(write_manifest(outdir, "sweep", cfg, outputs, started))
    return EXIT_OK


# ---------------------------------------------------------------------------
# ergodicity

def cmd_ergodicity(cfg):
    from .ergodicity import critical_field, critical_tau, ergodicity_scan, \
        gibbs_curve

    measures = (["concurrence", "discord"] if cfg["measure"] == "both"
                else [str(cfg["measure"])])
    taus = (parse_grid(cfg["tau_grid"]) if cfg["tau_grid"] is not None
            else 0.1 + 0.1 * np.arange(20))
    a, b = float(cfg["a"]), float(cfg["b"])
    beta, gamma = float(cfg["beta"]), float(cfg["gamma"])
    outdir = _outdir(cfg)
    started = time.time()

    rows = []
    crits = {}
    for measure in measures:
        curve = gibbs_curve((a + b) / 2.0, measure=measure, gamma=gamma)
        reports = ergodicity_scan(a, b, taus, measure, beta=beta,
                                  gamma=gamma, curve=curve)
        rows.extend((measure, r.tau, r.Q_S, r.Q_G_max, r.eta)
                    for r in reports)
        crits[measure] = critical_tau(reports)
    outputs = [write_csv(
        os.path.join(outdir, "ergodicity.csv"),
        ["measure", "tau_J", "Q_steady", "Q_gibbs_max", "eta"],
        rows,
    )]

    extra = {"tau_c": crits}
    if cfg["b_grid"] is not None:
        b_grid = parse_grid(cfg["b_grid"])
        bc = {}
        brows = []
        for measure in measures:
            bc[measure] = critical_field(a, b_grid, taus, measure,
                                         beta=beta, gamma=gamma)
            for bv in b_grid:
                reps = ergodicity_scan(a, float(bv), taus, measure,
                                       beta=beta, gamma=gamma)
                brows.extend((measure, bv, r.tau, r.eta) for r in reps)
        outputs.append(write_csv(
            os.path.join(outdir, "ergodicity_bsweep.csv"),
            ["measure", "b_J", "tau_J", "eta"],
            brows,
        ))
        extra["b_c"] = bc
    outputs.append(write_manifest(outdir, "ergodicity", cfg, outputs,
                                  started, extra=extra))
    return EXIT_OK


# ---------------------------------------------------------------------------
# validate

def random_tuples(count, rng=None, n_values=(0, 1, 2, 3, 4)):
    """Deterministic (a, b, tau, beta, n) tuples, grouped by parameter set.

    Grouping lets the dense oracle reuse one eigendecomposition per
    parameter set across the n values. The period range keeps the
    quasi-particle light cone 2 v n tau inside the smallest oracle chain,
    so spin-space ED at N = 8 is already close to the thermodynamic
    limit the momentum route computes.
    """
    rng = rng or np.random.default_rng(20260823)
    groups = -(-count // len(n_values))
    out = []
    for _ in range(groups):
        a = rng.uniform(0.0, 2.5)
        b = rng.uniform(0.0, 2.5)
        tau = rng.uniform(0.1, 0.6)
        beta = rng.uniform(0.5, 6.0)
        for n in n_values:
            out.append((a, b, tau, beta, int(n)))
    return out[:count]


def oracle_discrepancy(N, params, n, chain=None):
    """Max |correlator| gap between the momentum route and dense spin ED."""
    from .evolution import correlators_at_cycle
    from .oracle import oracle_two_site, pair_correlators

    ed = pair_correlators(oracle_two_site(N, params, n, chain=chain))
    mo = correlators_at_cycle(params, None, n)
    gaps = {
        "mz": ed["m1z"] - mo.mz,
        "txx": ed["txx"] - mo.txx,
        "tyy": ed["tyy"] - mo.tyy,
        "tzz": ed["tzz"] - mo.tzz,
        "txy": ed["txy"] - mo.txy,
    }
    worst = max(gaps, key=lambda k: abs(gaps[k]))
    return abs(gaps[worst]), worst


def _validate_checks(cfg):
    """Yield (name, passed, detail) for the whole invariant suite."""
    from .ergodicity import gibbs_measure
    from .evolution import (ModeEnsemble, correlators_at_cycle, evolve,
                            steady_state_correlators, thermal_block,
                            two_site_state)
    from .floquet import floquet_unitary
    from .measures import concurrence, purity, quantum_discord
    from .model import ModelParams, thermo_kgrid
    from .oracle import DenseChain, build_dense, shift_operator

    N = int(cfg["N"]) if cfg["N"] is not None else 8
    params = _model_params(cfg)
    rng = np.random.default_rng(20260823)
    eye2 = np.eye(2)

    # Floquet unitarity
    phis = rng.uniform(0.0, np.pi, 64)
    err = max(
        np.abs(floquet_unitary(p, params).U
               @ floquet_unitary(p, params).U.conj().T - eye2).max()
        for p in phis
    )
    yield "floquet_unitarity", err < 1e-10, f"max |U U^dag - I| = {err:.2e}"

    # block evolution preserves trace / Hermiticity / positivity
    worst = 0.0
    for p in phis[:16]:
        st = evolve(thermal_block(p, params.a, params.beta, params.gamma),
                    floquet_unitary(p, params), 5)
        worst = max(
            worst,
            abs(np.trace(st.rho).real - 1.0),
            np.abs(st.rho - st.rho.conj().T).max(),
            max(0.0, -np.linalg.eigvalsh(st.rho).min()),
        )
    yield "block_state_preservation", worst < 1e-10, f"worst defect {worst:.2e}"

    # a = b stationarity
    stat = ModelParams(a=params.a, b=params.a, tau=params.tau,
                       beta=params.beta, gamma=params.gamma)
    ens = ModeEnsemble(stat, thermo_kgrid(int(cfg["nodes"])))
    c0 = ens.correlators(0).as_dict()
    c7 = ens.correlators(7).as_dict()
    drift = max(abs(c0[k] - c7[k]) for k in c0)
    yield "stationarity_a_eq_b", drift < 1e-12, f"max drift {drift:.2e}"

    # measure bounds on driven states
    bad = []
    for tau in (0.3, 0.9, 2.5):
        p2 = ModelParams(a=params.a, b=params.b, tau=tau, beta=params.beta,
                         gamma=params.gamma)
        for n in (0, 3, 50):
            rho = two_site_state(correlators_at_cycle(p2, None, n))
            c = concurrence(rho)
            d = quantum_discord(rho)
            pu = purity(rho)
            if not (-1e-12 <= c <= 1 + 1e-12 and d >= -1e-9
                    and 0.25 - 1e-12 <= pu <= 1 + 1e-12):
                bad.append((tau, n, c, d, pu))
    yield "measure_bounds", not bad, f"violations: {bad or 'none'}"

    # concurrence under local unitaries
    rho = two_site_state(correlators_at_cycle(params, None, 3))
    h1 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    h2 = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    u1 = np.linalg.qr(h1)[0]
    u2 = np.linalg.qr(h2)[0]
    u = np.kron(u1, u2)
    dc = abs(concurrence(u @ rho @ u.conj().T) - concurrence(rho))
    yield "concurrence_local_unitary", dc < 1e-8, f"|dC| = {dc:.2e}"

    # discord vanishes on product states
    ra = np.array([[0.7, 0.1 + 0.05j], [0.1 - 0.05j, 0.3]])
    rb = np.array([[0.6, -0.2j], [0.2j, 0.4]])
    d0 = quantum_discord(np.kron(ra, rb))
    yield "discord_product_state", d0 < 1e-6, f"D(product) = {d0:.2e}"

    # dephasing steady state vs long-time evolution
    p3 = ModelParams(a=params.a, b=params.b, tau=0.9, beta=params.beta,
                     gamma=params.gamma)
    s_inf = steady_state_correlators(p3).as_dict()
    s_n = correlators_at_cycle(p3, None, 2000).as_dict()
    gap = max(abs(s_inf[k] - s_n[k]) for k in s_inf)
    yield "steady_vs_n2000", gap < 1e-3, f"max gap {gap:.2e}"

    # quadrature doubling stability
    g1 = ModeEnsemble(params, thermo_kgrid(8192)).correlators(5).as_dict()
    g2 = ModeEnsemble(params, thermo_kgrid(16384)).correlators(5).as_dict()
    dq = max(abs(g1[k] - g2[k]) for k in g1)
    yield "quadrature_doubling", dq < 1e-9, f"max change {dq:.2e}"

    # canonical curve consistency at n = 0
    q_curve = gibbs_measure(params.a, params.beta, "concurrence",
                            gamma=params.gamma)
    stat_c = concurrence(two_site_state(correlators_at_cycle(stat, None, 0)))
    dg = abs(q_curve - stat_c)
    yield "gibbs_matches_initial", dg < 1e-9, f"|dC| = {dg:.2e}"

    # dense oracle internals
    H = build_dense(N, params.a, params)
    S = shift_operator(N)
    herm = np.abs(H - H.conj().T).max()
    comm = np.abs(H @ S - S @ H).max()
    chain = DenseChain(N, params)
    U = chain.cycle_unitary()
    uni = np.abs(U @ U.conj().T - np.eye(2**N)).max()
    ok = herm < 1e-12 and comm < 1e-12 and uni < 1e-10
    yield "oracle_internals", ok, (
        f"herm {herm:.2e}, [H,shift] {comm:.2e}, unitarity {uni:.2e}")

    # cross-route agreement with the oracle
    worst_gap, worst_desc = 0.0, ""
    cache = {}
    for (a, b, tau, beta, n) in random_tuples(int(cfg["tuples"])):
        pt = ModelParams(a=a, b=b, tau=tau, beta=beta, gamma=params.gamma)
        key = (a, b, tau, beta)
        if key not in cache:
            cache[key] = DenseChain(N, pt)
        gap, name = oracle_discrepancy(N, pt, n, chain=cache[key])
        if gap > worst_gap:
            worst_gap, worst_desc = gap, f"{name} at {key + (n,)}"
    yield "oracle_agreement", worst_gap < 0.1, (
        f"worst |gap| {worst_gap:.4f} ({worst_desc})")


def cmd_validate(cfg):
    from .oracle import MAX_SITES

    N = int(cfg["N"]) if cfg["N"] is not None else 8
    if N > MAX_SITES:
        print(f"resource guard: oracle limited to N <= {MAX_SITES}, got {N}")
        return EXIT_RESOURCE
    outdir = _outdir(cfg)
    started = time.time()
    results = []
    for name, passed, detail in _validate_checks(cfg):
        results.append({"check": name, "passed": bool(passed),
                        "detail": detail})
        print(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
    failed = [r["check"] for r in results if not r["passed"]]
    report = os.path.join(outdir, "validate_report.json")
    with open(report, "w") as fh:
        json.dump({"N": N, "results": results, "failed": failed}, fh,
                  indent=2)
        fh.write("\n")
    write_manifest(outdir, "validate", cfg, [report], started,
                   extra={"failed": failed})
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        return EXIT_TOLERANCE
    print(f"all {len(results)} checks passed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point

_COMMANDS = {
    "revival": cmd_revival,
    "relax": cmd_relax,
    "sweep": cmd_sweep,
    "ergodicity": cmd_ergodicity,
    "validate": cmd_validate,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="spinchain",
        description="Driven transverse-field chain: correlation dynamics "
                    "experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", default=None)
        p.add_argument("--a", type=float, default=None)
        p.add_argument("--b", type=float, default=None)
        p.add_argument("--tau", type=float, default=None)
        p.add_argument("--beta", type=float, default=None)
        p.add_argument("--gamma", type=float, default=None)
        p.add_argument("--n-max", dest="n_max", type=int, default=None)
        p.add_argument("--nodes", type=int, default=None)
        p.add_argument("--N", default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--tau-grid", dest="tau_grid", default=None)
        p.add_argument("--measure", default=None,
                       choices=["concurrence", "discord", "both"])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (OSError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE

    if cfg["threads"]:
        try:
            from threadpoolctl import threadpool_limits
            threadpool_limits(limits=int(cfg["threads"]))
        except ImportError:
            for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                        "MKL_NUM_THREADS"):
                os.environ[var] = str(cfg["threads"])

    from .evolution import QuadratureError

    try:
        return _COMMANDS[args.command](cfg)
    except QuadratureError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE


if __name__ == "__main__":
    sys.exit(main())
