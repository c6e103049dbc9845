"""Finite-model-theory workbench for extension preservation on graph classes."""

__version__ = "0.1.0"
