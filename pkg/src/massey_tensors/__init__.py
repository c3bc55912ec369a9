"""Exact computation of Massey-product tensors and formality obstructions for rational DGAs."""

__version__ = "0.1.0"
