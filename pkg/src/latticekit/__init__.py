"""Construct, certify and measure finite lattices."""

__version__ = "0.1.0"
