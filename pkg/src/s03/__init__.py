"""Exact computations for the exotic bialgebra S03, its FRT dual and the derived models."""

__version__ = "0.1.0"
