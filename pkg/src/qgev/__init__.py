"""Exact certification of a tri-qubit PPT mixture that is genuinely entangled."""

__version__ = "0.1.0"
