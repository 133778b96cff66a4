"""Exact and certified computations around Perron-Frobenius dilatations."""

__version__ = "0.1.0"
