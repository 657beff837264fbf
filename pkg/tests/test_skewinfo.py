"""Skew information, the correlation measure, and the trace-formula oracle."""

import numpy as np
import pytest

from conftest import random_density, random_hermitian
from skewbounds.errors import DimensionMismatch, DomainError
from skewbounds.linalg import PAULI_X, PAULI_Z, DensityMatrix
from skewbounds.metrics import make_metric
from skewbounds.skewinfo import correlation, skew_information, wyd_direct

WY = make_metric("wy")


class TestCorrelation:
    def test_identity_observable_gives_zero(self):
        rng = np.random.default_rng(0)
        for d in (2, 3):
            rho = random_density(rng, d)
            B = random_hermitian(rng, d)
            for m in (WY, make_metric("sld"), make_metric("wyd", 0.3)):
                assert abs(correlation(rho, np.eye(d), B, m)) <= 1e-12

    @pytest.mark.parametrize("p", [0.1, 0.3, 0.5, 0.9])
    def test_two_level_hand_value(self, p):
        # rho = diag(p, 1-p), A = sigma_x, WY: I(A) = 1 - 2 sqrt(p(1-p))
        rho = DensityMatrix.from_matrix(np.diag([p, 1 - p]))
        got = correlation(rho, PAULI_X, PAULI_X, WY)
        assert got.real == pytest.approx(1 - 2 * np.sqrt(p * (1 - p)), abs=1e-12)
        assert abs(got.imag) <= 1e-14

    def test_conjugate_symmetry(self):
        rng = np.random.default_rng(1)
        rho = random_density(rng, 3)
        A = random_hermitian(rng, 3)
        B = random_hermitian(rng, 3)
        assert correlation(rho, B, A, WY) == pytest.approx(
            np.conj(correlation(rho, A, B, WY)), abs=1e-12
        )

    def test_sesquilinear(self):
        rng = np.random.default_rng(2)
        rho = random_density(rng, 3)
        A1, A2, B = (random_hermitian(rng, 3) for _ in range(3))
        a = 1.7  # real so a*A1 + A2 stays Hermitian
        lhs = correlation(rho, a * A1 + A2, B, WY)
        rhs = a * correlation(rho, A1, B, WY) + correlation(rho, A2, B, WY)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_dimension_mismatch(self):
        rho = DensityMatrix.from_matrix(np.eye(2) / 2)
        with pytest.raises(DimensionMismatch):
            correlation(rho, np.eye(3), np.eye(3), WY)


class TestSkewInformation:
    def test_zero_for_commuting(self):
        rho = DensityMatrix.from_matrix(np.diag([0.2, 0.8]))
        assert skew_information(rho, PAULI_Z, WY) == 0.0
        assert skew_information(rho, np.eye(2), WY) == 0.0

    def test_zero_for_maximally_mixed(self):
        rng = np.random.default_rng(3)
        for d in (2, 3, 4):
            rho = DensityMatrix.from_matrix(np.eye(d) / d)
            A = random_hermitian(rng, d)
            for m in (WY, make_metric("sld")):
                assert skew_information(rho, A, m) <= 1e-12

    def test_positive_for_noncommuting(self):
        rho = DensityMatrix.from_matrix(np.diag([0.2, 0.8]))
        assert skew_information(rho, PAULI_X, WY) > 0.01

    def test_shift_invariance(self):
        rng = np.random.default_rng(4)
        rho = random_density(rng, 3)
        A = random_hermitian(rng, 3)
        for c in (-2.0, 0.5, 10.0):
            assert skew_information(rho, A + c * np.eye(3), WY) == pytest.approx(
                skew_information(rho, A, WY), abs=1e-12
            )

    def test_pure_state_alpha_independence(self):
        rng = np.random.default_rng(5)
        rho = random_density(rng, 3, rank=1)
        A = random_hermitian(rng, 3)
        vals = [
            skew_information(rho, A, make_metric("wyd", a))
            for a in (0.1, 0.25, 0.5, 0.75, 0.9)
        ]
        assert max(vals) - min(vals) <= 1e-10

    def test_nonnegative_random(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            d = int(rng.integers(2, 5))
            rho = random_density(rng, d, rank=int(rng.integers(1, d + 1)))
            A = random_hermitian(rng, d)
            for m in (WY, make_metric("sld"), make_metric("wyd", 0.25)):
                assert skew_information(rho, A, m) >= 0.0


class TestWydDirectOracle:
    def test_pure_state_variance(self):
        # |psi> = (|0>+|1>)/sqrt(2), A = sigma_z, alpha = 1/2 -> variance 1
        rho = DensityMatrix.from_pure([1 / np.sqrt(2), 1 / np.sqrt(2)])
        assert wyd_direct(rho, PAULI_Z, 0.5) == pytest.approx(1.0, abs=1e-12)

    def test_two_level_hand_value(self):
        rho = DensityMatrix.from_matrix(np.diag([0.3, 0.7]))
        expected = 1 - 2 * np.sqrt(0.3 * 0.7)
        assert wyd_direct(rho, PAULI_X, 0.5) == pytest.approx(expected, abs=1e-12)

    def test_identity_gives_zero(self):
        rng = np.random.default_rng(7)
        rho = random_density(rng, 3)
        assert wyd_direct(rho, np.eye(3), 0.25) == pytest.approx(0.0, abs=1e-14)

    def test_alpha_domain(self):
        rho = DensityMatrix.from_matrix(np.eye(2) / 2)
        for alpha in (0.0, 1.0, -0.5):
            with pytest.raises(DomainError):
                wyd_direct(rho, PAULI_X, alpha)

    def test_agrees_with_metric_formula(self):
        rng = np.random.default_rng(8)
        for _ in range(30):
            d = int(rng.integers(2, 5))
            rho = random_density(rng, d, rank=int(rng.integers(1, d + 1)))
            A = random_hermitian(rng, d)
            for alpha in (0.25, 0.5, 0.75):
                via_metric = skew_information(rho, A, make_metric("wyd", alpha))
                assert abs(via_metric - wyd_direct(rho, A, alpha)) <= 1e-10
