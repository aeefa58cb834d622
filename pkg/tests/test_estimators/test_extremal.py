"""
Test suite for the extremal index and cluster index estimators.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tailchain.estimators.extremal import cluster_index_hat, extremal_index_hat, extremal_index_tilde
from tailchain.exceptions import ThresholdRangeError, ValidationError

SPIKE = np.zeros(11)
SPIKE[5] = 10.0


@st.composite
def telescoping_instances(draw):
    n = draw(st.integers(min_value=6, max_value=50))
    x = draw(st.lists(st.floats(min_value=0.0, max_value=100.0), min_size=n, max_size=n))
    h = draw(st.integers(min_value=2, max_value=4))
    k = draw(st.integers(min_value=1, max_value=n - 1))
    m = draw(st.integers(min_value=1, max_value=n - h))
    return np.asarray(x), h, k, m


class TestExtremalIndexHat:
    """Test suite for the running-maxima estimator."""

    def test_single_spike(self):
        """Test three windows see the spike: 3 / (h k) = 1.5."""
        record = extremal_index_hat(SPIKE, 2, 1)
        assert record.value == 1.5
        assert record.auxiliary['count'] == 3.0
        assert record.auxiliary['threshold'] == 0.0

    def test_max_windows(self):
        """Test restricting the window range."""
        assert extremal_index_hat(SPIKE, 2, 1, max_windows=4).auxiliary['count'] == 1.0
        with pytest.raises(ValidationError):
            extremal_index_hat(SPIKE, 2, 1, max_windows=10)

    @pytest.mark.parametrize('h', [0, 11, 1.5])
    def test_invalid_lag(self, h):
        """Test h must be an integer in [1, n - 1]."""
        with pytest.raises(ValidationError):
            extremal_index_hat(SPIKE, h, 1)

    def test_invalid_k(self):
        """Test k out of range."""
        with pytest.raises(ThresholdRangeError):
            extremal_index_hat(SPIKE, 2, 11)


class TestExtremalIndexTilde:
    """Test suite for the quiet-run estimator."""

    def test_isolated_exceedance(self):
        """Test a single exceedance preceded by quiet values gives 1."""
        assert extremal_index_tilde(SPIKE, 2, 1).value == 1.0

    def test_clustered_exceedances(self):
        """Test only the first member of a cluster is counted."""
        x = np.array([0.0, 0.0, 0.0, 5.0, 6.0, 7.0, 0.0, 0.0, 1.0])
        record = extremal_index_tilde(x, 2, 3)
        assert record.auxiliary['threshold'] == 1.0
        assert record.auxiliary['count'] == 1.0
        assert record.value == pytest.approx(1.0 / 3.0)

    @given(telescoping_instances())
    @settings(max_examples=150, deadline=None)
    def test_telescoping_counts(self, instance):
        """Test count_hat(h) - count_hat(h - 1) = count_tilde(h) on matched window ranges."""
        x, h, k, m = instance
        upper = extremal_index_hat(x, h, k, max_windows=m).auxiliary['count']
        lower = extremal_index_hat(x, h - 1, k, max_windows=m).auxiliary['count']
        tilde = extremal_index_tilde(x, h, k, max_windows=m).auxiliary['count']
        assert upper - lower == tilde


class TestClusterIndex:
    """Test suite for the window-sum estimator."""

    def test_spike(self):
        """Test the window sum sees the same three windows as the maximum."""
        assert cluster_index_hat(SPIKE, 2, 1).value == 1.5

    @given(telescoping_instances())
    @settings(max_examples=80, deadline=None)
    def test_dominates_maxima_for_nonnegative(self, instance):
        """Test b_hat(h) >= theta_hat(h) when all values are nonnegative."""
        x, h, k, _ = instance
        assert cluster_index_hat(x, h, k).value >= extremal_index_hat(x, h, k).value

    def test_sums_can_exceed_without_single_exceedance(self):
        """Test two moderate values jointly exceed the threshold."""
        x = np.array([0.0, 3.0, 3.0, 0.0, 0.0, 4.0])
        # threshold: second largest = 3; window sums over h = 1 are 3, 6, 3, 0, 4
        record = cluster_index_hat(x, 1, 1)
        assert record.auxiliary['count'] == 2.0
