"""Exact local intersection theory for Jacobian cycles at ADE quotient singularities."""

__version__ = "0.1.0"
