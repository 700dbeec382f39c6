"""Solvable Leibniz algebras with abelian nilradicals, in exact arithmetic."""

__version__ = "0.1.0"
