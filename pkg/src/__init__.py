"""Basis webs for invariant spaces of minuscule SL(n) representations."""

__version__ = "0.3.0"
