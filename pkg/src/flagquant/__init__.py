"""Exact computations on generalized flag manifolds G/P and their quantization."""
__version__ = "0.1.0"
