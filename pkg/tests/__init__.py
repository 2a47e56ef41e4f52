"""Test package for skewsq."""
