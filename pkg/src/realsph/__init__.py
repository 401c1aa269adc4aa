"""Exact structure theory of real spherical pairs ``(g, h)`` over the rationals."""

from .errors import RealSphError
from .spherical import SphericalPair, SphericalRootDatum, degenerate, spherical_roots, standardize

__version__ = "0.1.0"

__all__ = ["RealSphError", "SphericalPair", "SphericalRootDatum", "degenerate", "spherical_roots",
           "standardize"]
