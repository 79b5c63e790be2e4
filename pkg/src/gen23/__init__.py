"""Explicit (2,3)-generator pairs for Sp6(q), Omega7(q) and SU7(q^2) with exact certification."""

__version__ = "0.1.0"
