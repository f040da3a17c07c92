"""Exact commutative-algebra procedures with checkable certificates:
regular sequences, Koszul relations, true grade, and flatness of finite
algebras (the de Smit-Lenstra theorem)."""

__version__ = "0.1.0"
