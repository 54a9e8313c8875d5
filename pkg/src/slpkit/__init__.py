"""Exact strong Lefschetz property checks for finite graded modules."""

__version__ = "0.1.0"
