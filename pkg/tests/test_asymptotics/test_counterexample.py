"""
Test suite for the renewal chain covariances and regime classification.
"""

import math

import numpy as np
import pytest

from tailchain.asymptotics.counterexample import (
    classify_regime,
    counterexample_cov,
    excess_cross_moment,
    excess_first_moment,
    excess_second_moment,
    renewal_marginal_tail_level,
    renewal_tep_center,
    renewal_tep_covariance,
    stable_normalizer,
)
from tailchain.exceptions import OutOfRegimeError, ValidationError

BETA = 5.0
SUPPORT = np.arange(2, 200_001, dtype=float)
PMF = (SUPPORT - 1.0) ** (-BETA) - SUPPORT ** (-BETA)


def brute_moment(f):
    return float(np.sum(PMF * f(SUPPORT)))


class TestCounterexampleCov:
    """Test suite for the closed-form Gaussian-regime covariance."""

    def test_diagonal(self):
        """Test (beta+1)/(beta(beta-1)) - 1/beta = 1/3 at beta = 3, s = t = 1."""
        assert counterexample_cov(3.0, 1.0, 1.0) == pytest.approx(1.0 / 3.0)

    def test_off_diagonal(self):
        """Test s = 1, t = 2 gives 1/8 and the arguments are ordered."""
        assert counterexample_cov(3.0, 1.0, 2.0) == pytest.approx(1.0 / 8.0)
        assert counterexample_cov(3.0, 2.0, 1.0) == counterexample_cov(3.0, 1.0, 2.0)

    def test_out_of_regime(self):
        """Test beta <= 2 has no Gaussian limit."""
        with pytest.raises(OutOfRegimeError):
            counterexample_cov(2.0, 1.0, 1.0)
        with pytest.raises(ValidationError):
            counterexample_cov(3.0, 0.0, 1.0)


class TestExcessMoments:
    """Test suite for the moments of (Z - a)_+."""

    @pytest.mark.parametrize('a', [0, 1, 3, 10])
    def test_first_moment(self, a):
        """Test E[(Z - a)_+] against a truncated sum over the integer Pareto law."""
        assert excess_first_moment(BETA, a) == pytest.approx(brute_moment(lambda z: np.maximum(z - a, 0.0)),
                                                             rel=1e-9)

    @pytest.mark.parametrize('a', [0, 1, 3, 10])
    def test_second_moment(self, a):
        """Test E[(Z - a)_+^2] against a truncated sum."""
        assert excess_second_moment(BETA, a) == pytest.approx(brute_moment(lambda z: np.maximum(z - a, 0.0) ** 2),
                                                              rel=1e-8)

    def test_cross_moment(self):
        """Test E[(Z - a)_+ (Z - b)_+] against a truncated sum."""
        expected = brute_moment(lambda z: np.maximum(z - 1, 0.0) * np.maximum(z - 4, 0.0))
        assert excess_cross_moment(BETA, 4, 1) == pytest.approx(expected, rel=1e-8)

    def test_second_moment_needs_beta_above_two(self):
        """Test the second moment is infinite for beta <= 2."""
        with pytest.raises(OutOfRegimeError):
            excess_second_moment(1.5, 0)


class TestRenewalTep:
    """Test suite for the finite-level centering and covariance."""

    def test_marginal_tail(self):
        """Test P(X_0 > 0) = 1 and P(X_0 > x) = E[(Z - floor x)_+] / E[Z]."""
        assert renewal_marginal_tail_level(3.0, 0.0) == pytest.approx(1.0)
        expected = excess_first_moment(3.0, 4) / excess_first_moment(3.0, 0)
        assert renewal_marginal_tail_level(3.0, 4.7) == pytest.approx(expected)

    def test_center_at_one(self):
        """Test T(1) = 1."""
        assert renewal_tep_center(3.0, 11.0, 1.0) == pytest.approx(1.0)
        assert renewal_tep_center(3.0, 11.0, 2.0) < 1.0

    def test_covariance_symmetric_and_positive(self):
        """Test Cov(s, t) = Cov(t, s) and a positive diagonal."""
        assert renewal_tep_covariance(3.0, 11.0, 1.0, 2.0) == pytest.approx(renewal_tep_covariance(3.0, 11.0, 2.0, 1.0))
        assert renewal_tep_covariance(3.0, 11.0, 1.0, 1.0) > 0

    def test_covariance_regime(self):
        """Test beta <= 2 and u < 1 are rejected."""
        with pytest.raises(OutOfRegimeError):
            renewal_tep_covariance(2.0, 11.0, 1.0, 1.0)
        with pytest.raises(ValidationError):
            renewal_tep_covariance(3.0, 0.5, 1.0, 1.0)


class TestClassifyRegime:
    """Test suite for classify_regime."""

    def test_gaussian(self):
        """Test beta = 3, a = 0.2 is Gaussian with n P(Z > u) = n floor(n^a)^-beta."""
        info = classify_regime(3.0, 0.2, 200_000)
        assert info.regime == 'gaussian'
        assert info.n_tail_z == pytest.approx(200_000 * 11.0 ** -3)

    def test_stable(self):
        """Test beta = 1.5, a = 0.3 is stable."""
        assert classify_regime(1.5, 0.3, 200_000).regime == 'stable'

    def test_degenerate(self):
        """Test a beta > 1 is degenerate."""
        info = classify_regime(1.5, 0.75, 200_000)
        assert info.regime == 'degenerate'
        assert info.to_dict()['exponent'] == 0.75

    def test_boundaries(self):
        """Test a beta = 1, beta = 2 and beta <= 1 raise."""
        with pytest.raises(OutOfRegimeError):
            classify_regime(2.0, 0.5, 1000)
        with pytest.raises(OutOfRegimeError):
            classify_regime(2.0, 0.2, 1000)
        with pytest.raises(OutOfRegimeError):
            classify_regime(1.0, 0.2, 1000)

    def test_stable_normalizer(self):
        """Test a_n = n^(1/beta)."""
        assert stable_normalizer(2.0, 100) == pytest.approx(10.0)
        assert math.isclose(stable_normalizer(1.5, 1000), 100.0)
