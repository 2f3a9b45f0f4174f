"""Covolumes of arithmetic lattices from quaternion algebras over totally real fields."""

__version__ = "0.1.0"
