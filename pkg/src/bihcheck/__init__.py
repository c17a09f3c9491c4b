"""Exact algebraic verification of classification results for biharmonic
real hypersurfaces in complex projective space."""

__version__ = "0.1.0"

from .exact import RationalInterval
from .multipoly import MultiPoly, P, PolyFraction, ParseError

__all__ = ["MultiPoly", "P", "PolyFraction", "ParseError", "RationalInterval", "__version__"]
