"""Desk-scale numerics around zeta zeros, co-Poisson summation and Sonine spaces."""

__version__ = "0.1.0"
