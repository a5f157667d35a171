"""Exact verification toolkit for toric fans, weighted blow-ups and
symbolic-power computations."""

__version__ = "0.1.0"
