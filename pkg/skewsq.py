#!/usr/bin/env python3
"""
Standalone entry point for skewsq.

This script runs skewsq directly from a checkout without installing it:
    python skewsq.py approx matrix.csv
    python skewsq.py simulate -o series.csv
    python skewsq.py compare -p constant -s 2

For more information, see README.md or run:
    python skewsq.py --help
"""

import os
import sys

# Make the package importable from the checkout
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from skewsq.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
