"""Closed-form dynamics, forces and emission of two identical two-level atoms
sharing a single excitation."""

from dyad.errors import DomainError, DyadError, OracleError, QuadratureError

__all__ = ["DomainError", "DyadError", "OracleError", "QuadratureError"]

__version__ = "0.1.0"
