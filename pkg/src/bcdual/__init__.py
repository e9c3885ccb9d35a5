"""Exact computations around the Brown-Comenetz dual of the K(2)-local sphere at p=3."""

__version__ = "0.1.0"
