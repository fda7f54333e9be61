"""Computational checks for the maximal function fields y^(q+1) = x^(2i)(x^2+1) over GF(q^2)."""

__version__ = "0.1.0"
