"""Entanglement dynamics of a two-mode squeezed vacuum coupled to thermal reservoirs."""

__version__ = "0.1.0"
