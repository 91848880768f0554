"""Output purity and classical capacity of structured quantum channels."""

__version__ = "0.1.0"
