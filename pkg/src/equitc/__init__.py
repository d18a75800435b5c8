"""Equivariant motion planners and cohomological certificates for Z2-spaces."""
from . import backend

__version__ = "0.1.0"
