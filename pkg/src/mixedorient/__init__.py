"""Bounded-radius orientations of mixed multigraphs."""
from .graph import (
    UNREACHABLE,
    EdgeRecord,
    GraphError,
    MixedMultigraph,
    OrientationPlan,
    apply_plan,
    distance,
    eccentricities,
    is_valid_input,
    parse_graph,
    radius_center,
    reverse,
    serialize_graph,
    undirected_bridges,
)
from .orientout import ContractViolation, orientout
from .driver import orient_full, orientin, verify_orientation

__all__ = [
    "UNREACHABLE", "EdgeRecord", "GraphError", "MixedMultigraph", "OrientationPlan", "apply_plan",
    "distance", "eccentricities", "is_valid_input", "parse_graph", "radius_center", "reverse",
    "serialize_graph", "undirected_bridges", "ContractViolation", "orientout", "orient_full",
    "orientin", "verify_orientation",
]
