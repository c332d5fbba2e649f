"""Exact set-theoretic and linear Yang-Baxter solutions from racks, Leibniz and 3-Leibniz algebras."""

__version__ = "0.1.0"
