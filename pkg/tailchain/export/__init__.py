"""
Export Module

Writes simulated paths, estimates, tail functions, extremograms, limit
variances and Monte Carlo reports as CSV and JSON.
"""

from tailchain.export.writers import ResultWriter, to_jsonable

__all__ = ['ResultWriter', 'to_jsonable']
