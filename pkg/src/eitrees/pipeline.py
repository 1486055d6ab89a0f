"""Graph in, four edge-independent spanning trees out."""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import ChainDecomposition
from .mader import MaderSequence, extract_sequence
from .maintenance import build_chain_decomposition
from .multigraph import MultiGraph
from .numbering import (
    EdgeNumbering,
    IndependenceReport,
    TreeSet,
    build_trees,
    compute_f,
    compute_g,
    strip_loops,
    verify_independence,
)

__all__ = ["TreesResult", "independent_trees"]


@dataclass
class TreesResult:
    sequence: MaderSequence
    decomposition: ChainDecomposition  # includes loop chains
    graph: MultiGraph  # loops removed; the trees live here
    loopless: ChainDecomposition
    f: EdgeNumbering
    g: EdgeNumbering
    trees: TreeSet
    report: IndependenceReport
    trace: list[str] = field(default_factory=list)


def independent_trees(g: MultiGraph, root: int, *, check: bool = False) -> TreesResult:
    """Run the whole construction on a 4-edge-connected ``g``.

    Raises :class:`~eitrees.errors.NotFourEdgeConnected` with a witness cut
    when ``g`` has a cut of fewer than four edges. The chain decomposition
    is validated after every construction step regardless; ``check``
    additionally re-runs the global connectivity oracle after every reverse
    step of the extraction.
    """
    seq = extract_sequence(g, root, check=check)
    trace: list[str] = []
    built, d = build_chain_decomposition(seq, check=True, trace=trace)
    h, dl = strip_loops(built, d)
    f = compute_f(dl)
    gn = compute_g(dl)
    trees = build_trees(h, dl, f, gn)
    report = verify_independence(h, root, trees)
    return TreesResult(seq, d, h, dl, f, gn, trees, report, trace)
