"""Four edge-independent spanning trees in 4-edge-connected multigraphs.

The construction runs in four stages: a Mader construction sequence is
extracted from the graph, a rooted chain decomposition is carried through
that sequence, two edge numberings are read off the decomposition, and the
trees are assigned from the numberings. :func:`independent_trees` runs them
all.
"""

from .chains import Chain, ChainDecomposition, Kind, validate
from .connectivity import edge_connectivity, is_4_edge_connected, max_flow
from .errors import GraphError, InvariantError, NotFourEdgeConnected
from .mader import AddEdge, MaderSequence, Pinch, extract_sequence, random_4ec, replay
from .maintenance import build_chain_decomposition
from .multigraph import MultiGraph
from .numbering import (
    TreeSet,
    build_trees,
    compute_f,
    compute_g,
    four_disjoint_paths,
    verify_independence,
)
from .pipeline import TreesResult, independent_trees

__all__ = [
    "AddEdge",
    "Chain",
    "ChainDecomposition",
    "GraphError",
    "InvariantError",
    "Kind",
    "MaderSequence",
    "MultiGraph",
    "NotFourEdgeConnected",
    "Pinch",
    "TreeSet",
    "TreesResult",
    "build_chain_decomposition",
    "build_trees",
    "compute_f",
    "compute_g",
    "edge_connectivity",
    "extract_sequence",
    "four_disjoint_paths",
    "independent_trees",
    "is_4_edge_connected",
    "max_flow",
    "random_4ec",
    "replay",
    "validate",
    "verify_independence",
]

__version__ = "0.1.0"
