"""Exact computations of additive actions on projective spaces, hypersurfaces and toric varieties."""

__version__ = "0.1.0"
