"""Tests for entanglement/correlation measures and the power-law fitter."""

import numpy as np
import pytest

from spinchain.evolution import two_site_state
from spinchain.measures import (
    concurrence,
    fit_power_law,
    purity,
    quantum_discord,
    trace_distance,
    von_neumann_entropy,
)


def ket(vec):
    v = np.asarray(vec, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def bell_phi_plus():
    return ket([1, 0, 0, 1])


def werner(p):
    return p * bell_phi_plus() + (1 - p) * np.eye(4) / 4


def random_product_state(rng):
    def qubit():
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        return ket(v)

    return np.kron(qubit(), qubit())


class TestConcurrence:
    def test_bell_state(self):
        assert concurrence(bell_phi_plus()) == pytest.approx(1.0, abs=1e-12)

    def test_product_state(self, rng):
        for _ in range(5):
            assert concurrence(random_product_state(rng)) == pytest.approx(
                0.0, abs=1e-7
            )

    def test_werner_threshold(self):
        # C(p) = max(0, (3p - 1)/2) for Werner states.
        assert concurrence(werner(1 / 3)) == pytest.approx(0.0, abs=1e-10)
        assert concurrence(werner(0.5)) == pytest.approx(0.25, abs=1e-10)
        assert concurrence(werner(0.6)) == pytest.approx(0.40, abs=1e-10)
        assert concurrence(werner(0.2)) == 0.0

    def test_local_unitary_invariance(self, rng):
        rho = werner(0.7)
        for _ in range(3):
            A = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
            B = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))[0]
            U = np.kron(A, B)
            assert concurrence(U @ rho @ U.conj().T) == pytest.approx(
                concurrence(rho), abs=1e-10
            )

    def test_rejects_nonstate(self):
        with pytest.raises(ValueError):
            concurrence(np.eye(4))  # trace 4


class TestVonNeumannEntropy:
    def test_pure_and_mixed(self):
        assert von_neumann_entropy(bell_phi_plus()) == pytest.approx(0.0, abs=1e-12)
        assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(2.0, abs=1e-12)
        assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-12)


class TestQuantumDiscord:
    def test_product_state_zero(self, rng):
        for _ in range(3):
            assert quantum_discord(random_product_state(rng)) == pytest.approx(
                0.0, abs=1e-7
            )

    def test_classical_state_zero(self):
        # Classically correlated diagonal state has zero discord.
        rho = 0.5 * ket([1, 0, 0, 0]) + 0.5 * ket([0, 0, 0, 1])
        assert quantum_discord(rho) == pytest.approx(0.0, abs=1e-8)

    def test_bell_state(self):
        assert quantum_discord(bell_phi_plus()) == pytest.approx(1.0, abs=1e-8)

    def test_werner_values(self):
        # Frozen references computed with a dense 400x200 projective
        # measurement grid (closed-form X-state conditional entropy).
        assert quantum_discord(werner(0.5)) == pytest.approx(0.26248318, abs=1e-6)
        assert quantum_discord(werner(0.6)) == pytest.approx(0.36514845, abs=1e-6)

    def test_x_state_value(self):
        rho = two_site_state(
            {"mz": 0.3, "txx": -0.5, "tyy": 0.2, "tzz": 0.25, "txy": 0.1}
        )
        # Frozen reference from an independent brute-force minimization over
        # projective measurements on the second qubit.
        assert quantum_discord(rho) == pytest.approx(0.040338, abs=2e-5)

    def test_nonnegative(self, rng):
        for _ in range(3):
            # random mixture of a Bell state and a product state
            lam = rng.uniform(0.1, 0.9)
            rho = lam * werner(rng.uniform(0, 1)) + (1 - lam) * random_product_state(
                rng
            )
            assert quantum_discord(rho) >= -1e-9


class TestTraceDistance:
    def test_identical(self):
        rho = werner(0.4)
        assert trace_distance(rho, rho) == pytest.approx(0.0, abs=1e-13)

    def test_orthogonal_pure(self):
        a = ket([1, 0, 0, 0])
        b = ket([0, 0, 0, 1])
        assert trace_distance(a, b) == pytest.approx(2.0, abs=1e-12)
        assert trace_distance(a, b, normalized=True) == pytest.approx(1.0, abs=1e-12)

    def test_triangle_inequality(self, rng):
        a, b, c = werner(0.2), werner(0.6), random_product_state(rng)
        assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-12

    def test_symmetry(self, rng):
        a, b = werner(0.3), random_product_state(rng)
        assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-13)


class TestPurity:
    def test_extremes(self):
        assert purity(bell_phi_plus()) == pytest.approx(1.0, abs=1e-12)
        assert purity(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-13)


class TestFitPowerLaw:
    def test_recovers_planted_exponent(self, rng):
        n = np.arange(1, 2001)
        for B in (0.3, 0.75, 1.5, 2.5):
            d = 0.8 * n ** (-B) * (1 + 0.05 * rng.standard_normal(n.size))
            fit = fit_power_law(n, np.abs(d))
            assert abs(fit.B - B) < 0.02, (B, fit.B)
            assert fit.A == pytest.approx(0.8, rel=0.1)

    def test_window_in_tail(self):
        n = np.arange(1, 1001)
        d = n ** (-1.0)
        fit = fit_power_law(n, d)
        assert fit.window[0] >= 0.7 * n[-1] * 0.25  # block-averaged tail
        assert fit.window[1] <= n[-1]

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            fit_power_law(np.arange(1, 10), np.arange(1, 10) ** -1.0)

    def test_converged_below_floor(self):
        n = np.arange(1, 2001)
        d = np.zeros(n.size)
        with pytest.raises(ValueError):
            fit_power_law(n, d)
