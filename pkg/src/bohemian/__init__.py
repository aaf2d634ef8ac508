"""Bohemian matrix families: enumeration, exact characteristic polynomials,
eigenvalue bounds, Toeplitz limit curves and density images."""

__version__ = "0.1.0"
