"""
Monte Carlo harness tests package for tailchain.
"""
