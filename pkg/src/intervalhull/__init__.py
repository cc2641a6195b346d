"""Convex interval hulls: combinations of points whose coefficients each lie in their own interval."""

from .errors import (
    AlphaNotBelowOne,
    CapExceeded,
    DimensionUnsupported,
    EmptyHull,
    GammaIsOne,
    InstanceError,
    IntervalHullError,
    NotAffinelyIndependent,
    NotInAffineHull,
    NotIrreducible,
    NumericalBreakdown,
    UnboundedHull,
)
from .feasibility import FeasibilityReport, bound_family, boundedness, check, is_nonempty, witness
from .hull import VPolytope, co_hull, hull_bounds, vertex_bound, wide_vertex_bound
from .model import (
    DEFAULT_TOL,
    Instance,
    Interval,
    IntervalFamily,
    PointSet,
    Tolerances,
    load_instance,
    parse_instance,
    serialize_instance,
)
from .oracle import compare_hulls, grid_sample, member
from .reduction import MinimalityStatus, coefficient_range, hat, is_irreducible, is_wide, minimality_status
from .transforms import Decomposition, Homothety, apply_affine, decompose, homothety_pullback

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
