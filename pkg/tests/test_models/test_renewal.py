"""
Test suite for the renewal (descent) chain.

Tests cover:
- Spec validation
- Stationary pmf, tail mass and marginal survival
- Stationary initial draws
- Path structure and determinism
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from tailchain.exceptions import InvalidSpecError, ValidationError
from tailchain.models import marginal_tail, validation_report
from tailchain.models.innovations import IntegerPareto
from tailchain.models.renewal import (
    RenewalChainSpec,
    renewal_marginal_tail,
    renewal_stationary_pmf,
    sample_stationary_initial,
    simulate_renewal_chain,
)


class TestRenewalChainSpec:
    """Test suite for RenewalChainSpec."""

    def test_rates(self, renewal_spec):
        """Test E[Z] = 1 + zeta(3) and lambda = 1 / E[Z]."""
        assert renewal_spec.beta == 3.0
        assert renewal_spec.mean_jump() == pytest.approx(1.0 + special.zeta(3.0, 1))
        assert renewal_spec.renewal_rate() == pytest.approx(1.0 / renewal_spec.mean_jump())

    def test_fixed_start_needs_state(self):
        """Test initial='fixed' requires a positive integer state."""
        with pytest.raises(InvalidSpecError) as exc_info:
            RenewalChainSpec(IntegerPareto(3.0), initial='fixed')
        assert exc_info.value.condition == 'initial_state'

    def test_unknown_initial(self):
        """Test an unknown initial mode is rejected."""
        with pytest.raises(InvalidSpecError) as exc_info:
            RenewalChainSpec(IntegerPareto(3.0), initial='uniform')
        assert exc_info.value.condition == 'initial'

    def test_to_dict(self):
        """Test the fixed state is serialized only for fixed starts."""
        fixed = RenewalChainSpec(IntegerPareto(2.5), initial='fixed', initial_state=4)
        assert fixed.to_dict() == {'model': 'renewal', 'beta': 2.5, 'initial': 'fixed', 'initial_state': 4}
        assert 'initial_state' not in RenewalChainSpec(IntegerPareto(2.5)).to_dict()

    def test_validation_report(self, renewal_spec):
        """Test the renewal validation report is always accepted."""
        report = validation_report(renewal_spec)
        assert report['accepted'] is True
        assert report['renewal_rate'] == pytest.approx(renewal_spec.renewal_rate())


class TestStationaryLaw:
    """Test suite for the stationary distribution."""

    def test_mass_at_one(self, renewal_spec):
        """Test pi(1) = 1 / E[Z]."""
        table = renewal_stationary_pmf(renewal_spec, 10)
        assert table.pmf[0] == pytest.approx(1.0 / renewal_spec.mean_jump())
        assert table.n_max == 10

    def test_pmf_shape(self, renewal_spec):
        """Test pi(n) = P(Z > n - 1) / E[Z] for n >= 2."""
        table = renewal_stationary_pmf(renewal_spec, 5)
        expected = np.array([1.0, 1.0, 2.0 ** -3, 3.0 ** -3, 4.0 ** -3]) / renewal_spec.mean_jump()
        np.testing.assert_allclose(table.pmf, expected)

    @settings(max_examples=100, deadline=None)
    @given(beta=st.floats(min_value=1.1, max_value=8.0), n_max=st.integers(min_value=1, max_value=2000))
    def test_pmf_normalization(self, beta, n_max):
        """Test the table plus its exact tail mass sums to one."""
        table = renewal_stationary_pmf(RenewalChainSpec(IntegerPareto(beta)), n_max)
        assert abs(table.total() - 1.0) < 1e-12

    def test_marginal_tail(self, renewal_spec):
        """Test P(X_0 > x) agrees with the pmf tail sum."""
        table = renewal_stationary_pmf(renewal_spec, 2)
        assert float(renewal_marginal_tail(renewal_spec, 2.5)) == pytest.approx(table.tail_mass)
        assert float(renewal_marginal_tail(renewal_spec, 0.0)) == pytest.approx(1.0)
        assert float(renewal_marginal_tail(renewal_spec, -1.0)) == 1.0

    def test_generic_marginal_tail(self, renewal_spec):
        """Test the model-level dispatcher returns the renewal survival."""
        assert float(marginal_tail(renewal_spec, 7.0)) == pytest.approx(
            float(renewal_marginal_tail(renewal_spec, 7.0)))

    def test_initial_draws(self, renewal_spec):
        """Test stationary initial states hit state 1 with frequency pi(1)."""
        rng = np.random.default_rng(1)
        draws = np.array([sample_stationary_initial(renewal_spec, rng) for _ in range(5000)])
        assert draws.min() >= 1
        assert np.mean(draws == 1) == pytest.approx(renewal_spec.renewal_rate(), abs=0.03)


class TestSimulateRenewalChain:
    """Test suite for renewal chain simulation."""

    def test_fixed_start(self):
        """Test a fixed start of 3 descends to 1 before the first renewal."""
        spec = RenewalChainSpec(IntegerPareto(3.0), initial='fixed', initial_state=3)
        path = simulate_renewal_chain(spec, 10, seed=1)
        np.testing.assert_array_equal(path.values[:3], [3.0, 2.0, 1.0])
        assert path.values[3] >= 2
        assert path.n == 10

    def test_path_structure(self, renewal_spec):
        """Test every step descends by one except renewals right after state 1."""
        x = simulate_renewal_chain(renewal_spec, 5000, seed=2).values
        assert np.all(x >= 1)
        assert np.all(x == np.floor(x))
        after_one = x[:-1] == 1
        np.testing.assert_array_equal(np.diff(x)[~after_one], -1.0)
        assert np.all(x[1:][after_one] >= 2)

    def test_long_run_frequency_of_one(self, renewal_spec):
        """Test the share of visits to state 1 approaches the renewal rate."""
        x = simulate_renewal_chain(renewal_spec, 200_000, seed=3).values
        assert np.mean(x == 1) == pytest.approx(renewal_spec.renewal_rate(), abs=0.01)

    def test_seed_determinism(self, renewal_spec):
        """Test equal seeds give byte-identical paths."""
        first = simulate_renewal_chain(renewal_spec, 1000, seed=7)
        second = simulate_renewal_chain(renewal_spec, 1000, seed=7)
        assert first.values.tobytes() == second.values.tobytes()

    def test_rejects_other_specs(self, ar1_spec):
        """Test a non-renewal spec is refused."""
        with pytest.raises(ValidationError):
            simulate_renewal_chain(ar1_spec, 10, seed=1)
