"""Exact Newton-polyhedral invariants of surface singularities."""

__version__ = "0.1.0"
