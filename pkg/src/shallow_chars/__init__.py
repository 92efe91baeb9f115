"""Exact combinatorics of shallow characters on pro-unipotent radicals."""

__version__ = "0.1.0"
