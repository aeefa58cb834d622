"""
Test suite for McReport aggregation and the summary statistics.
"""

import math

import numpy as np
import pytest

from tailchain.harness.report import McReport, ReplicationRecord, summarize


def make_report(values, failed=(), **kwargs):
    records = []
    for i, v in enumerate(values):
        if i in failed:
            records.append(ReplicationRecord(index=i, seed=100 + i, error='EstimationError: boom'))
        else:
            records.append(ReplicationRecord(index=i, seed=100 + i, raw=(v + 0.5,), deviations=(v,),
                                             factors={'sqrt_k': 1.0}))
    return McReport(config={'name': 'unit'}, records=tuple(records), center=(0.5,), **kwargs)


class TestSummarize:
    """Test suite for summarize."""

    def test_moments(self):
        """Test per-column mean, variance and standard error."""
        summary = summarize(np.array([[1.0], [2.0], [3.0], [4.0]]))
        assert summary['replications'] == 4
        assert summary['mean'] == [2.5]
        assert summary['variance'][0] == pytest.approx(5.0 / 3.0)
        assert summary['std_error'][0] == pytest.approx(math.sqrt(5.0 / 3.0) / 2.0)
        assert set(summary['jarque_bera']) == {'statistic', 'p_value', 'p_value_floor', 'normal'}

    def test_covariance_matrix(self):
        """Test the covariance of two perfectly correlated columns."""
        values = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        cov = np.asarray(summarize(values)['covariance'])
        np.testing.assert_allclose(cov, [[1.0, 2.0], [2.0, 4.0]])

    def test_small_samples(self):
        """Test higher moments are omitted when too few replications exist."""
        assert set(summarize(np.array([[1.0]]))) == {'replications', 'mean'}
        assert 'jarque_bera' not in summarize(np.array([[1.0], [2.0]]))

    def test_heavy_tails_flagged(self, small_rng):
        """Test Jarque-Bera rejects normality for Cauchy deviations."""
        values = small_rng.standard_cauchy(2000).reshape(-1, 1)
        assert summarize(values)['jarque_bera']['normal'] is False


class TestMcReport:
    """Test suite for McReport."""

    def test_failed_records_excluded(self):
        """Test aggregates skip failed replications but count them."""
        report = make_report([1.0, 2.0, 3.0, 4.0], failed={1})
        assert report.failures == 1
        assert report.values.shape == (3, 1)
        assert report.mean == pytest.approx(8.0 / 3.0)

    def test_subset_reaggregates(self):
        """Test a subset report recomputes its statistics from the kept records."""
        report = make_report([1.0, 2.0, 3.0, 4.0])
        subset = report.subset([0, 1])
        assert subset.mean == 1.5
        assert subset.variance == pytest.approx(0.5)
        assert report.mean == 2.5

    def test_target_and_tolerance(self):
        """Test relative error and the pass flag."""
        report = make_report([1.0, 2.0, 3.0, 4.0], target=2.0, tolerance=0.2)
        assert report.relative_error == pytest.approx(abs(5.0 / 3.0 - 2.0) / 2.0)
        assert report.passed is True
        assert make_report([1.0, 2.0]).passed is None

    def test_to_dict_excludes_runtime(self):
        """Test wall-clock time never reaches the serialized report."""
        fast = make_report([1.0, 2.0, 3.0], elapsed_seconds=0.1)
        slow = make_report([1.0, 2.0, 3.0], elapsed_seconds=99.0)
        assert fast.to_dict() == slow.to_dict()
        assert fast == slow
        assert 'elapsed_seconds' not in fast.to_dict()

    def test_values_table(self):
        """Test per-replication rows with NaN for failed replications."""
        rows = make_report([1.0, 2.0], failed={1}).values_table()
        assert rows[0] == {'index': 0, 'seed': 100, 'raw_0': 1.5, 'deviation_0': 1.0, 'factor_sqrt_k': 1.0,
                           'error': ''}
        assert math.isnan(rows[1]['deviation_0'])
        assert rows[1]['error'].startswith('EstimationError')

    def test_empty_report(self):
        """Test a report without successful records has NaN aggregates."""
        report = make_report([1.0], failed={0})
        assert report.values.shape == (0, 1)
        assert math.isnan(report.mean)
        assert math.isnan(report.variance)
