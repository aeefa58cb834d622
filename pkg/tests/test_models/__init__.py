"""
Model tests package for tailchain: innovations, AR, T-ARCH, renewal chain, serialization.
"""
