"""
Asymptotics tests package for tailchain: extremogram, spectral tail process, limit variances.
"""
