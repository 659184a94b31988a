"""Exact q-series toolkit for eta-multiplier Shimura lifts."""

__version__ = "0.1.0"
