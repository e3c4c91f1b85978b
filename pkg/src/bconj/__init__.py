"""Exact Jack polynomials, set-partition cumulants and the Goulden-Jackson series."""

__version__ = "0.1.0"
