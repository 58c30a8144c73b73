"""Finite models of torsors, gerbes and equivariant lifting."""
from .errors import InputError, InvariantError, PreconditionError, UnsupportedError

__version__ = "0.1.0"

__all__ = ["InputError", "InvariantError", "PreconditionError", "UnsupportedError", "__version__"]
