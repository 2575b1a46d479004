"""Finite groups of Lie type as matrix groups, conjugacy-class racks and collapse certificates."""

__version__ = "0.1.0"
