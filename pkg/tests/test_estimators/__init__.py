"""
Estimator tests package for tailchain.
"""
