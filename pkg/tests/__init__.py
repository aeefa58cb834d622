"""
Test suite for tailchain.
"""
