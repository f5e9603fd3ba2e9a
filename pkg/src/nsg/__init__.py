"""Exact normal surface toolkit for triangulated 3-manifolds.

Surfaces are rebuilt from integer coordinates, vertex normal surfaces are
enumerated with an exact double description method, and genus bounds in
terms of quadrilateral counts are evaluated on the results.
"""

from nsg.triangulation import (
    GluingError,
    ParseError,
    SurfaceTriangulation,
    Triangulation,
    classify,
    compute_skeleton,
    double,
    parse_triangulation,
)
from nsg.homology import HomologyProfile, homology
from nsg.coords import (
    NormalCoordinates,
    haken_sum,
    lift_to_standard,
    matching_system,
    quad_projection,
    splitting_coordinates,
    validate_coordinates,
    vertex_link_coordinates,
)
from nsg.surface import (
    build_surface,
    edge_classification,
    region_decomposition,
    topology_summary,
)
from nsg.enumerate import extreme_rays, vertex_normal_surfaces

__all__ = [
    "GluingError",
    "HomologyProfile",
    "NormalCoordinates",
    "ParseError",
    "SurfaceTriangulation",
    "Triangulation",
    "build_surface",
    "classify",
    "compute_skeleton",
    "double",
    "edge_classification",
    "extreme_rays",
    "haken_sum",
    "homology",
    "lift_to_standard",
    "matching_system",
    "parse_triangulation",
    "quad_projection",
    "region_decomposition",
    "splitting_coordinates",
    "topology_summary",
    "validate_coordinates",
    "vertex_link_coordinates",
    "vertex_normal_surfaces",
]

__version__ = "0.1.0"
