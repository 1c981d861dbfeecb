"""Recover projective geometry from finite permutation group actions."""

__version__ = "0.1.0"
