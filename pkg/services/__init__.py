# services/__init__.py

"""
Services package for essig.

This package contains the computational services:
- Exact sparse linear algebra
- D4 root data and representation models
- Essential signatures and the transcribed tables
- The cone of fundamental signatures and its lattice points

Usage:
    from services import EssentialSignatureService, PointEnumerator, Decomposer

    # Or import specific functions
    from services.signatures import essential_signatures
    from services.lattice import count_points, verify_dimension_sweep
"""

from .cone import DualDescription, FacetNormal, RayGenerator
from .lattice import Decomposer, PointEnumerator, SweepReport
from .root_system import D4, DomWeight, EpsWeight
from .signatures import EssentialSignatureService, Signature

__all__ = [
    "D4",
    "DomWeight",
    "EpsWeight",
    "Signature",
    "EssentialSignatureService",
    "RayGenerator",
    "FacetNormal",
    "DualDescription",
    "PointEnumerator",
    "Decomposer",
    "SweepReport",
]

__version__ = "0.1.0"
