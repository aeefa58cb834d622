#!/usr/bin/env python3
"""
Setup script for tailchain
"""

from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

# Runtime dependencies imported by the package (requirements.txt also lists
# pinned test/dev tooling).
requirements = [
    "numpy>=1.26",
    "scipy>=1.11",
    "pandas>=2.1",
    "numba>=0.59",
    "tqdm>=4.66",
    "python-dotenv>=1.0",
]

setup(
    name="tailchain",
    version="0.1.0",
    author="tailchain Contributors",
    description="Tail empirical processes, extremal estimators and Monte Carlo checks for heavy-tailed Markov chains",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    py_modules=["main"],
    package_data={"tailchain": ["schemas/*.json"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
    install_requires=requirements,
    entry_points={
        "console_scripts": [
            "tailchain=main:main",
        ],
    },
)
