"""Exact verification toolkit for spin local models and orthogonal bideterminant bases."""

__version__ = "0.1.0"
