"""
Tail core tests package for tailchain: thresholds, weight functions, TED and TEP.
"""
