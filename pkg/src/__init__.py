"""Derived Colimits - an exact homological algebra engine with the homalg CLI."""

__version__ = "0.1.0"
