"""Exact computation of harmonic sums and polylogarithms at non-positive multi-indices."""

__version__ = "0.1.0"
