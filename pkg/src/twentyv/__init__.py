"""Exact partition functions of the twenty-vertex model on pentagons and of
domino tilings of Aztec triangles, with determinant formulas, independent
combinatorial counters and an identity-checking suite."""

__version__ = "0.1.0"
