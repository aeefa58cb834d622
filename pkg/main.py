#!/usr/bin/env python3
"""
tailchain - Tail Empirical Process Toolkit

Main entry point for the command-line interface.
"""

from tailchain.cli import main


if __name__ == "__main__":
    main()
