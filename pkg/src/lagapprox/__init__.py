"""Laguerre spectral approximation on the half-line."""
__version__ = "0.1.0"
