"""Exact computation of optimal pebbling and rubbling numbers."""

__version__ = "0.1.0"
