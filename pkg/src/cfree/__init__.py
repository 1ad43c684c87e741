"""Tools for universal graphs with one forbidden subgraph."""

from .graph import (
    Graph,
    GraphError,
    GraphFormatError,
    PointedGraph,
    attach_at,
    clique,
    cycle,
    delete_edge,
    disjoint_union,
    parse_graph,
    parse_pointed_graph,
    path,
    serialize_graph,
    star,
)

__all__ = [
    "Graph",
    "GraphError",
    "GraphFormatError",
    "PointedGraph",
    "attach_at",
    "clique",
    "cycle",
    "delete_edge",
    "disjoint_union",
    "parse_graph",
    "parse_pointed_graph",
    "path",
    "serialize_graph",
    "star",
]
