"""Hill, extremal index, cluster index and conditional tail expectation estimators."""

from tailchain.estimators.cte import cte_extrapolated, cte_hat
from tailchain.estimators.extremal import cluster_index_hat, extremal_index_hat, extremal_index_tilde
from tailchain.estimators.hill import extreme_quantile, hill
from tailchain.estimators.records import EstimateRecord

ESTIMATORS = {
    'hill': lambda x, k, h: hill(x, k),
    'extremal_index_hat': lambda x, k, h: extremal_index_hat(x, h, k),
    'extremal_index_tilde': lambda x, k, h: extremal_index_tilde(x, h, k),
    'cluster_index': lambda x, k, h: cluster_index_hat(x, h, k),
    'cte': lambda x, k, h: cte_hat(x, h, k),
}

__all__ = [
    'ESTIMATORS', 'EstimateRecord', 'cluster_index_hat', 'cte_extrapolated', 'cte_hat',
    'extremal_index_hat', 'extremal_index_tilde', 'extreme_quantile', 'hill',
]
