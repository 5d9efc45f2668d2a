"""Exact K-stability and KSBA wall computations for surface pairs."""

__version__ = "0.1.0"
