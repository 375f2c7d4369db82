"""Tests for model parameters, pulse profile, block coefficients, and k-grids."""

import numpy as np
import pytest

from spinchain.model import (
    KGrid,
    ModelParams,
    block_coefficients,
    block_hamiltonian_4x4,
    finite_kgrid,
    pulse_field,
    thermo_kgrid,
)


class TestModelParams:
    def test_defaults(self):
        p = ModelParams(a=1.4, b=0.0, tau=0.3)
        assert p.beta == 20.0
        assert p.gamma == 1.0
        assert p.J == 1.0

    def test_invalid_tau(self):
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=0.0)
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=-1.0)

    def test_invalid_beta(self):
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=0.3, beta=-0.1)

    def test_invalid_gamma(self):
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=0.3, gamma=1.5)
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=0.3, gamma=-0.1)

    def test_invalid_J(self):
        with pytest.raises(ValueError):
            ModelParams(a=1.4, b=0.0, tau=0.3, J=0.0)


class TestPulseField:
    def test_square_wave(self):
        p = ModelParams(a=1.4, b=0.2, tau=0.3)
        # First half of each cycle takes value a, second half value b.
        assert pulse_field(0.05, p) == 1.4
        assert pulse_field(0.149, p) == 1.4
        assert pulse_field(0.151, p) == 0.2
        assert pulse_field(0.29, p) == 0.2
        # Periodicity.
        assert pulse_field(0.05 + 5 * 0.3, p) == pulse_field(0.05, p)
        assert pulse_field(0.2 + 7 * 0.3, p) == pulse_field(0.2, p)

    def test_before_drive(self):
        p = ModelParams(a=1.4, b=0.2, tau=0.3)
        assert pulse_field(-1.0, p) == 1.4
        assert pulse_field(0.0, p) == 1.4


class TestBlockCoefficients:
    def test_reference_point(self):
        # phi = pi/3, h = 1.4 -> (cos phi, sin phi, h - cos phi)
        c0, c1, c2 = block_coefficients(np.pi / 3, 1.4)
        assert c0 == pytest.approx(0.5, abs=1e-14)
        assert c1 == pytest.approx(np.sqrt(3) / 2, abs=1e-14)
        assert c2 == pytest.approx(0.9, abs=1e-14)

    def test_anisotropy_scaling(self):
        c0, c1, c2 = block_coefficients(0.7, 1.1, gamma=0.5)
        assert c1 == pytest.approx(0.5 * np.sin(0.7), abs=1e-14)
        assert c0 == pytest.approx(np.cos(0.7), abs=1e-14)
        assert c2 == pytest.approx(1.1 - np.cos(0.7), abs=1e-14)

    def test_vectorized(self):
        phi = np.linspace(0.1, 3.0, 17)
        c0, c1, c2 = block_coefficients(phi, 0.8)
        assert c0.shape == phi.shape
        np.testing.assert_allclose(c0, np.cos(phi), atol=1e-15)
        np.testing.assert_allclose(c2, 0.8 - np.cos(phi), atol=1e-15)


class TestBlockHamiltonian:
    def test_hermitian(self):
        H = block_hamiltonian_4x4(0.9, 1.4)
        np.testing.assert_allclose(H, H.conj().T, atol=1e-15)

    def test_structure(self):
        phi, h = 0.9, 1.4
        c0, c1, c2 = block_coefficients(phi, h)
        H = block_hamiltonian_4x4(phi, h)
        # Even-parity 2x2 block: c0*I + c1*sigma_y + c2*sigma_z.
        assert H[0, 0] == pytest.approx(c0 + c2)
        assert H[1, 1] == pytest.approx(c0 - c2)
        assert H[0, 1] == pytest.approx(-1j * c1)
        assert H[1, 0] == pytest.approx(1j * c1)
        # Inert odd-parity sector.
        assert H[2, 2] == pytest.approx(c0)
        assert H[3, 3] == pytest.approx(c0)
        assert np.all(H[2:, :2] == 0)
        assert np.all(H[:2, 2:] == 0)


class TestFiniteKGrid:
    def test_momenta_and_weights(self):
        g = finite_kgrid(8)
        np.testing.assert_allclose(g.phi, 2 * np.pi * np.arange(1, 5) / 8)
        np.testing.assert_allclose(g.weights, np.full(4, 2 * np.pi / 8))

    def test_rejects_odd_or_small(self):
        with pytest.raises(ValueError):
            finite_kgrid(7)
        with pytest.raises(ValueError):
            finite_kgrid(2)

    def test_integrate_constant(self):
        g = finite_kgrid(16)
        assert g.integrate(np.ones_like(g.phi)) == pytest.approx(np.pi)


class TestThermoKGrid:
    def test_weights_sum_to_pi(self, tkgrid):
        assert tkgrid.weights.sum() == pytest.approx(np.pi, rel=1e-13)

    def test_domain(self, tkgrid):
        assert np.all(tkgrid.phi > 0.0)
        assert np.all(tkgrid.phi < np.pi)
        assert np.all(np.diff(tkgrid.phi) > 0)

    def test_polynomial_exactness(self):
        # Composite 16-point Gauss-Legendre integrates smooth functions to
        # machine precision.
        g = thermo_kgrid(64)
        assert g.integrate(np.sin(g.phi)) == pytest.approx(2.0, abs=1e-13)
        assert g.integrate(np.cos(3 * g.phi) ** 2) == pytest.approx(
            np.pi / 2, abs=1e-13
        )

    def test_mode_sum_normalization(self, tkgrid):
        # (1/2pi) * integral over [0, pi) of 2 dphi = 1/2... the mode sum of
        # the constant 1 equals 1/2 (half Brillouin zone).
        assert tkgrid.mode_sum(np.ones_like(tkgrid.phi)) == pytest.approx(0.5)

    def test_minimum_nodes(self):
        with pytest.raises(ValueError):
            thermo_kgrid(8)


class TestKGrid:
    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            KGrid(phi=np.array([0.1, 0.2]), weights=np.array([1.0]))
