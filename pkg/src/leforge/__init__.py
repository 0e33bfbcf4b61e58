"""Exact Lê numbers, comparison-complex multiplicities and deformation formulas for hypersurfaces."""

__version__ = "0.1.0"
