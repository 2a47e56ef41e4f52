#!/usr/bin/env python3
"""Main entry point for the skewsq package."""

from skewsq.cli import main

if __name__ == "__main__":
    main()
