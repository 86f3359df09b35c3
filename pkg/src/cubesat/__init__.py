"""Saturated subgraphs of the hypercube: constructions, exhaustive checks and bounds."""

__version__ = "0.1.0"

from .cube import (  # noqa: E402
    CubeAutomorphism,
    CubeGraph,
    EdgeId,
    PartitionedVertex,
    SubcubePattern,
    apply_automorphism,
    compose_product,
    edge_endpoints,
    enumerate_subcubes,
    load_graph,
    save_graph,
    subcube_edges,
    vertex_weight,
)
