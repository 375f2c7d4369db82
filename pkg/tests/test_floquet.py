"""Tests for single-mode Floquet operators, quasi-energy bands, and crossings."""

import numpy as np
import pytest
from scipy.linalg import expm

from spinchain.floquet import (
    band,
    band_crossings,
    floquet_unitary,
    group_velocity,
    half_cycle_unitary,
    quasi_energy,
    revival_time,
    uniform_phi_grid,
)
from spinchain.model import ModelParams, block_coefficients, thermo_kgrid

SY = np.array([[0.0, -1j], [1j, 0.0]])
SZ = np.array([[1.0, 0.0], [0.0, -1.0]])


def reference_half_cycle(phi, h, dt, gamma=1.0):
    """Brute-force matrix exponential of the traceless even-sector block."""
    c0, c1, c2 = block_coefficients(phi, h, gamma)
    return expm(-1j * dt * (c1 * SY + c2 * SZ))


class TestHalfCycleUnitary:
    def test_matches_expm(self, rng):
        for _ in range(25):
            phi = rng.uniform(0.01, np.pi - 0.01)
            h = rng.uniform(0.0, 2.5)
            dt = rng.uniform(0.05, 3.0)
            U = half_cycle_unitary(phi, h, dt)
            np.testing.assert_allclose(
                U, reference_half_cycle(phi, h, dt), atol=1e-12
            )

    def test_special_rotation(self):
        # phi = pi/2, h = 0, dt = pi/2: coefficients (0, 1, 0), so the
        # propagator is exp(-i (pi/2) sigma_y) = -i sigma_y.
        U = half_cycle_unitary(np.pi / 2, 0.0, np.pi / 2)
        np.testing.assert_allclose(U, -1j * SY, atol=1e-12)

    def test_unitary(self, rng):
        for _ in range(10):
            U = half_cycle_unitary(
                rng.uniform(0, np.pi), rng.uniform(0, 2.5), rng.uniform(0.1, 5)
            )
            np.testing.assert_allclose(U @ U.conj().T, np.eye(2), atol=1e-13)

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(ValueError):
            half_cycle_unitary(0.5, 1.0, 0.0)


class TestFloquetUnitary:
    def test_composition(self, rng):
        for _ in range(25):
            phi = rng.uniform(0.01, np.pi - 0.01)
            p = ModelParams(
                a=rng.uniform(0, 2.5), b=rng.uniform(0, 2.5), tau=rng.uniform(0.1, 4)
            )
            fd = floquet_unitary(phi, p)
            Uref = half_cycle_unitary(phi, p.b, p.tau / 2) @ half_cycle_unitary(
                phi, p.a, p.tau / 2
            )
            np.testing.assert_allclose(fd.U, Uref, atol=1e-12)

    def test_eigenphase_consistency(self, rng):
        # Quasi-energy reconstructs the eigenphases of the cycle unitary.
        for _ in range(20):
            phi = rng.uniform(0.01, np.pi - 0.01)
            p = ModelParams(
                a=rng.uniform(0, 2.5), b=rng.uniform(0, 2.5), tau=rng.uniform(0.1, 4)
            )
            fd = floquet_unitary(phi, p)
            evals = np.linalg.eigvals(fd.U)
            phases = np.sort(np.mod(np.angle(evals), 2 * np.pi))
            eps = fd.eps_F * p.tau
            target = np.sort(np.mod(np.array([-eps, eps]), 2 * np.pi))
            np.testing.assert_allclose(phases, target, atol=1e-10)

    def test_axis_reconstruction(self, rng):
        # U = cos(eps*tau) I - i sin(eps*tau) (n . sigma).
        SX = np.array([[0, 1], [1, 0]], dtype=complex)
        for _ in range(20):
            phi = rng.uniform(0.05, np.pi - 0.05)
            p = ModelParams(
                a=rng.uniform(0, 2.5), b=rng.uniform(0, 2.5), tau=rng.uniform(0.1, 3)
            )
            fd = floquet_unitary(phi, p)
            if fd.degenerate:
                continue
            th = fd.eps_F * p.tau
            n = fd.axis
            Urec = np.cos(th) * np.eye(2) - 1j * np.sin(th) * (
                n[0] * SX + n[1] * SY + n[2] * SZ
            )
            np.testing.assert_allclose(fd.U, Urec, atol=1e-10)

    def test_quasi_energy_folding(self, rng):
        for _ in range(30):
            phi = rng.uniform(0.01, np.pi - 0.01)
            p = ModelParams(
                a=rng.uniform(0, 2.5), b=rng.uniform(0, 2.5), tau=rng.uniform(0.1, 8)
            )
            eps = quasi_energy(phi, p)
            assert 0.0 <= eps * p.tau <= np.pi

    def test_undriven_limit(self):
        # a = b: the quasi-energy is the static dispersion folded into the
        # principal zone.
        p = ModelParams(a=1.4, b=1.4, tau=0.3)
        phi = 1.1
        _, c1, c2 = block_coefficients(phi, 1.4)
        lam = np.hypot(c1, c2)
        assert quasi_energy(phi, p) == pytest.approx(lam, rel=1e-12)

    def test_swap_symmetry(self, rng):
        # Exchanging the two half-cycle fields leaves the spectrum invariant
        # (the two propagators are related by conjugation).
        for _ in range(10):
            phi = rng.uniform(0.01, np.pi - 0.01)
            a, b, tau = rng.uniform(0, 2.5), rng.uniform(0, 2.5), rng.uniform(0.1, 3)
            e1 = quasi_energy(phi, ModelParams(a=a, b=b, tau=tau))
            e2 = quasi_energy(phi, ModelParams(a=b, b=a, tau=tau))
            assert e1 == pytest.approx(e2, abs=1e-12)


class TestBand:
    def test_band_shape_and_range(self, base_params, tkgrid):
        phi, eps = band(base_params, tkgrid)
        assert eps.shape == phi.shape
        assert np.all(eps >= 0)
        assert np.all(eps * base_params.tau <= np.pi)

    def test_group_velocity_grid_stability(self):
        # The maximum group velocity is stable under grid refinement.
        p = ModelParams(a=1.4, b=0.0, tau=0.3)
        _, v1 = group_velocity(p, uniform_phi_grid(2048))
        _, v2 = group_velocity(p, uniform_phi_grid(4096))
        assert abs(v1.max() - v2.max()) / v2.max() < 1e-3

    def test_revival_time_scales_with_N(self, base_params):
        t100 = revival_time(100, base_params)
        t200 = revival_time(200, base_params)
        assert t200 == pytest.approx(2 * t100, rel=1e-12)

    def test_revival_time_small_N_rejected(self, base_params):
        with pytest.raises(ValueError):
            revival_time(4, base_params)

    def test_flat_band_rejected(self):
        # At h=0 with gamma=1 the mode energy sqrt(sin^2 + cos^2) = 1 is
        # dispersionless, so no revival time can be defined.
        p = ModelParams(a=0.0, b=0.0, tau=0.3)
        with pytest.raises(ValueError):
            revival_time(100, p)


class TestBandCrossings:
    def test_small_tau_gapped(self, base_params, tkgrid):
        rep = band_crossings(base_params, tkgrid)
        assert rep.min_gap > 0.05
        assert not rep.is_crossing

    def test_large_tau_crossing(self, tkgrid):
        # At larger periods the folded band touches the zone edges.
        p = ModelParams(a=1.4, b=0.0, tau=6.3)
        rep = band_crossings(p, tkgrid)
        assert rep.min_gap < 0.05
        assert 0.0 <= rep.phi <= np.pi

    def test_gap_location_is_extremal(self, tkgrid):
        p = ModelParams(a=1.4, b=0.0, tau=2.0)
        rep = band_crossings(p, tkgrid)
        _, eps = band(p, tkgrid)
        theta = eps * p.tau
        gaps = np.minimum(theta, np.pi - theta)
        assert rep.min_gap <= gaps.min() + 1e-9
