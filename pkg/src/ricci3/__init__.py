"""Exact Ricci-curvature toolkit for graphs of maximum degree 3."""

from .curvature import (
    CurvatureValue,
    NegativeCertificate,
    curvature_profile,
    edge_curvature,
    edge_curvatures,
    is_nonnegatively_curved,
    kappa_eps,
    kappa_lly,
    kappa_ollivier,
    kappa_transport,
    min_curvature,
    negative_test,
)
from .graphs import (
    Graph,
    State,
    StateAssignment,
    WeightScheme,
    build_graph,
    diameter_path,
    is_geodesic_cycle,
    is_geodesic_path,
    is_geodesic_subgraph,
    state_function,
)
from .graphio import (
    emit_edge_json,
    emit_graph6,
    parse_edge_json,
    parse_graph6,
    parse_graph_file,
)
from .transport import ProbabilityMeasure, TransportPlan, measure_mu, wasserstein

__version__ = "0.1.0"
