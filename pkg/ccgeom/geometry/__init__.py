"""Geometry of the constant-curvature planes: spaces, cycles, regions, symmetry."""
from .cycles import Circle, Cycle, GeodesicCycle, Hypercycle, Paracycle, curvature, intersect_cycles
from .regions import (
    ArcPolygon,
    Disk,
    HalfPlane,
    IntersectionResult,
    Padded,
    Paraball,
    Region,
    ResultKind,
    intersect_regions,
)
from .space_core import E2, H2, S2, Geodesic, Isometry, Point, SpaceKind, distance
from .symmetry import SymmetryReport, Verdict, is_centrally_symmetric_polygon, is_centrally_symmetric_result

__all__ = [
    "S2", "E2", "H2", "SpaceKind", "Point", "Isometry", "Geodesic", "distance",
    "Cycle", "Circle", "Paracycle", "Hypercycle", "GeodesicCycle", "curvature", "intersect_cycles",
    "Region", "Disk", "Paraball", "Padded", "HalfPlane", "ArcPolygon", "IntersectionResult", "ResultKind",
    "intersect_regions",
    "Verdict", "SymmetryReport", "is_centrally_symmetric_polygon", "is_centrally_symmetric_result",
]
