"""
tailchain - tail empirical processes of regularly varying Markov chains.

Simulation of heavy-tailed chains, tail estimators, limit-variance
evaluation and replicated Monte Carlo checks of the limit theory.
"""

__version__ = "0.1.0"
