"""Exact computations with Cox rings of varieties with a finitely generated Cox ring."""

__version__ = "0.1.0"
