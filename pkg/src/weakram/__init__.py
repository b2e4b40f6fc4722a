"""Exact computations around lifting weakly ramified automorphism groups of k[[y]]."""

__version__ = "0.1.0"
