"""Intersection distributions of polynomials over GF(q) and of (q+1)-sets in PG(2,q)."""

from ._accel import backend
from .distribution import (
    IntersectionDistribution,
    complete_from_tail,
    convert,
    poly_distribution,
    set_distribution,
)
from .field import FieldCtx, build_field, field_of_order
from .geometry import PointSet, graph_set, plane
from .poly import Polynomial, parse_poly

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "IntersectionDistribution",
    "PointSet",
    "Polynomial",
    "backend",
    "build_field",
    "complete_from_tail",
    "convert",
    "field_of_order",
    "graph_set",
    "parse_poly",
    "plane",
    "poly_distribution",
    "set_distribution",
]
