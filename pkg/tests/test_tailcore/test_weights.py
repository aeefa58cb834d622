"""
Test suite for weight functions of the weighted TED.
"""

import numpy as np
import pytest

from tailchain.exceptions import ValidationError, WeightGrowthWarning
from tailchain.tailcore.weights import WeightFn

WINDOWS = np.array([[1.0, 2.0], [3.0, -4.0]])


class TestWeightFn:
    """Test suite for WeightFn evaluation and checks."""

    def test_indicator(self):
        """Test the indicator weight is one on every window."""
        np.testing.assert_array_equal(WeightFn.indicator()(WINDOWS), [1.0, 1.0])

    def test_coordinate(self):
        """Test psi(x) = x_i."""
        np.testing.assert_array_equal(WeightFn.coordinate(1)(WINDOWS), [2.0, -4.0])

    def test_product_power(self):
        """Test psi(x) = prod |x_i|^q_i."""
        np.testing.assert_allclose(WeightFn.product_power([1.0, 2.0])(WINDOWS), [4.0, 48.0])

    def test_dimension_checks(self):
        """Test the weight must fit windows of h + 1 entries."""
        with pytest.raises(ValidationError):
            WeightFn.coordinate(2).check_dimension(1)
        with pytest.raises(ValidationError):
            WeightFn.product_power([1.0]).check_dimension(1)

    def test_invalid_definitions(self):
        """Test malformed weights are rejected at construction."""
        with pytest.raises(ValidationError):
            WeightFn(kind='coordinate')
        with pytest.raises(ValidationError):
            WeightFn.product_power([-1.0])
        with pytest.raises(ValidationError):
            WeightFn(kind='exponential')

    def test_growth_violation_warns(self):
        """Test a linear weight with alpha = 2 fails the growth condition with a warning."""
        with pytest.warns(WeightGrowthWarning):
            assert WeightFn.coordinate(0).check_growth(2.0, 1) is False

    def test_growth_condition_holds(self):
        """Test bounded and slowly growing weights pass."""
        assert WeightFn.indicator().check_growth(1.0, 2) is True
        assert WeightFn.coordinate(0).check_growth(5.0, 1) is True

    def test_declared_growth_overrides(self):
        """Test declared exponents replace the derived ones."""
        psi = WeightFn(kind='coordinate', index=0, growth=(0.1, 0.1))
        assert psi.growth_exponents(1) == (0.1, 0.1)
        assert psi.check_growth(1.0, 1) is True

    def test_dict_round_trip(self):
        """Test to_dict and from_dict."""
        psi = WeightFn.product_power([1.0, 0.5])
        assert WeightFn.from_dict(psi.to_dict()) == psi
