"""Polynomial-method bounds for binary and spherical codes."""

__version__ = "0.1.0"
