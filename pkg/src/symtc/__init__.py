"""Symmetric motion planning on the circle and the discrete cover search."""

__version__ = "0.1.0"
