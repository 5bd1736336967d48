"""Exact Gram-matrix certificates for sums of squares of forms."""

__version__ = "0.1.0"
