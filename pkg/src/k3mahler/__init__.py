"""Numerical verification of m(Q_-3) = (8/5) d_3 and the objects in its proof."""

__version__ = "0.1.0"
