"""Mader construction sequences for 4-edge-connected graphs.

Every 4-edge-connected graph arises from two vertices joined by four
parallel edges via two operations: adding an edge, and *pinching* two
distinct edges through a new degree-4 vertex. :func:`extract_sequence` runs
this in reverse (delete an edge when possible, otherwise split off a
degree-4 vertex other than the root) and records the forward sequence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

from .connectivity import FlowNetwork, edge_connectivity, is_4_edge_connected
from .errors import GraphError, InvariantError, NotFourEdgeConnected, SplitOffError
from .multigraph import MultiGraph

__all__ = [
    "AddEdge",
    "Pinch",
    "MaderOp",
    "MaderSequence",
    "base_graph",
    "apply_op",
    "replay",
    "find_deletable_edge",
    "split_off",
    "extract_sequence",
    "random_4ec",
    "format_sequence",
    "parse_sequence",
]


@dataclass(frozen=True)
class AddEdge:
    u: int
    v: int
    new_edge: int


@dataclass(frozen=True)
class Pinch:
    """Pinch ``e1 = (x, y)`` and ``e2 = (z, w)`` through ``new_vertex``.

    ``ex`` joins the new vertex to the smaller-id endpoint of ``e1`` and
    ``ey`` to the larger; ``ez``/``ew`` likewise for ``e2``. Stored endpoint
    order never matters, so a sequence replays the same way on any graph
    with the same ids.
    """

    e1: int
    e2: int
    new_vertex: int
    ex: int
    ey: int
    ez: int
    ew: int

    @property
    def new_edges(self) -> tuple[int, int, int, int]:
        return (self.ex, self.ey, self.ez, self.ew)


MaderOp = Union[AddEdge, Pinch]


@dataclass
class MaderSequence:
    root: int
    partner: int
    base_edges: tuple[int, int, int, int]
    ops: list[MaderOp] = field(default_factory=list)


def base_graph(
    root: int = 0, partner: int | None = None, edge_ids: tuple[int, ...] | None = None
) -> tuple[MultiGraph, MaderSequence]:
    """Two vertices joined by four parallel edges, with an empty sequence."""
    if partner is None:
        partner = root + 1
    if edge_ids is None:
        edge_ids = (0, 1, 2, 3)
    if len(set(edge_ids)) != 4:
        raise ValueError("base graph needs four distinct edge ids")
    if partner == root:
        raise ValueError("partner must differ from root")
    g = MultiGraph()
    g.add_vertex(root)
    g.add_vertex(partner)
    for e in edge_ids:
        g.add_edge(root, partner, e)
    return g, MaderSequence(root, partner, tuple(edge_ids))  # type: ignore[arg-type]


def apply_op(g: MultiGraph, op: MaderOp) -> None:
    """Apply a Mader operation in place."""
    if isinstance(op, AddEdge):
        g.add_edge(op.u, op.v, op.new_edge)
        return
    if op.e1 == op.e2:
        raise GraphError("pinch needs two distinct edges")
    if not (g.has_edge(op.e1) and g.has_edge(op.e2)):
        raise GraphError(f"pinch references stale edge ({op.e1}, {op.e2})")
    if g.has_vertex(op.new_vertex):
        raise GraphError(f"vertex {op.new_vertex} already exists")
    fresh = op.new_edges
    if len(set(fresh)) != 4 or any(g.has_edge(e) for e in fresh):
        raise GraphError(f"pinch edge ids {fresh} are not fresh")
    x, y = sorted(g.endpoints(op.e1))
    z, w = sorted(g.endpoints(op.e2))
    g.delete_edge(op.e1)
    g.delete_edge(op.e2)
    v = g.add_vertex(op.new_vertex)
    for end, e in zip((x, y, z, w), fresh):
        g.add_edge(end, v, e)


def replay(seq: MaderSequence) -> MultiGraph:
    g, _ = base_graph(seq.root, seq.partner, seq.base_edges)
    for op in seq.ops:
        apply_op(g, op)
    return g


def _deletable(g: MultiGraph, e: int, net: FlowNetwork) -> bool:
    # In a 4-edge-connected graph, g - uv stays 4-edge-connected exactly when
    # every u-v cut has at least five edges.
    a, b = g.endpoints(e)
    if a == b:
        return True
    if g.degree(a) < 5 or g.degree(b) < 5:
        return False
    return net.value([a], [b], 5) >= 5


def find_deletable_edge(g: MultiGraph, known_stuck: set[int] | None = None) -> int | None:
    """Smallest edge id whose deletion keeps ``g`` 4-edge-connected.

    ``g`` must be 4-edge-connected. ``known_stuck`` caches edges already shown
    undeletable; local connectivity never rises under deletion or splitting,
    so entries stay valid while the caller keeps reducing the same graph.
    Newly found undeletable edges are added to it.
    """
    net: FlowNetwork | None = None
    for e, (a, b) in g.edge_items():
        if a == b:
            return e
        if known_stuck is not None and e in known_stuck:
            continue
        if g.degree(a) >= 5 and g.degree(b) >= 5 and net is None:
            net = FlowNetwork(g)
        if net is not None and _deletable(g, e, net):
            return e
        if known_stuck is not None:
            known_stuck.add(e)
    return None


def _pairings(edges: list[int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    a, b, c, d = sorted(edges)
    return [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))]


def split_off(
    g: MultiGraph, v: int, root: int, *, inplace: bool = False
) -> tuple[Pinch, MultiGraph]:
    """Split off degree-4 vertex ``v`` (the reverse of a pinch).

    The three pairings of the incident edges are tried in canonical order;
    the first one that keeps the graph 4-edge-connected is used. ``v`` is
    removed and its id retired. Returns the pinch that re-creates ``v``.

    A pairing ``{va, vb}, {vc, vd}`` fails only if some vertex set holds
    ``a, b`` but not ``c, d`` (or the reverse) and is left by at most three
    edges of ``g - v``, so each pairing costs one capped flow.
    """
    if v == root:
        raise ValueError("cannot split off the root")
    if not g.has_vertex(v):
        raise GraphError(f"unknown vertex {v}")
    inc = g.incident(v)
    if any(g.is_loop(e) for e in inc):
        raise ValueError(f"vertex {v} carries a loop; delete it first")
    if len(inc) != 4:
        raise ValueError(f"vertex {v} has degree {g.degree(v)}, expected 4")
    nbr = {e: g.other_end(e, v) for e in inc}
    net: FlowNetwork | None = None
    chosen = None
    for p, q in _pairings(inc):
        a, b = nbr[p[0]], nbr[p[1]]
        c, d = nbr[q[0]], nbr[q[1]]
        if {a, b} & {c, d}:
            chosen = (p, q)
            break
        if net is None:
            net = FlowNetwork(g, skip_vertex=v)
        if net.value({a, b}, {c, d}, 4) >= 4:
            chosen = (p, q)
            break
    if chosen is None:
        raise SplitOffError(f"splitting-off failed at vertex {v}")
    h = g if inplace else g.copy()
    (p1, p2), (q1, q2) = chosen
    for e in inc:
        h.delete_edge(e)
    h.remove_isolated_vertex(v)
    if nbr[p1] > nbr[p2]:
        p1, p2 = p2, p1
    if nbr[q1] > nbr[q2]:
        q1, q2 = q2, q1
    s1 = h.add_edge(nbr[p1], nbr[p2])
    s2 = h.add_edge(nbr[q1], nbr[q2])
    return Pinch(s1, s2, v, p1, p2, q1, q2), h


def _is_base(g: MultiGraph) -> bool:
    return g.number_of_vertices() == 2 and g.number_of_edges() == 4


def extract_sequence(g: MultiGraph, root: int, *, check: bool = False) -> MaderSequence:
    """Mader sequence from the four-edge base at ``root`` up to ``g``.

    Replaying the result reproduces ``g`` with identical vertex and edge
    ids. Raises :class:`NotFourEdgeConnected` carrying a witness cut when
    ``g`` has a cut of fewer than four edges. With ``check`` every reverse
    step is re-verified with the global connectivity oracle.
    """
    if g.number_of_vertices() < 2:
        raise ValueError("need at least two vertices")
    if not g.has_vertex(root):
        raise GraphError(f"unknown root {root}")
    if not is_4_edge_connected(g):
        rep = edge_connectivity(g)
        raise NotFourEdgeConnected(rep.value, rep.witness_cut)
    work = g.copy()
    ops: list[MaderOp] = []
    stuck: set[int] = set()
    while not _is_base(work):
        e = find_deletable_edge(work, stuck)
        if e is not None:
            u, v = work.endpoints(e)
            work.delete_edge(e)
            ops.append(AddEdge(u, v, e))
        else:
            cands = [
                v for v in work.vertices if v != root and work.degree(v) == 4
            ]
            if not cands:
                raise InvariantError("minimally 4-edge-connected graph without a degree-4 non-root vertex")
            op, _ = split_off(work, cands[0], root, inplace=True)
            ops.append(op)
        if check and not is_4_edge_connected(work):
            raise InvariantError(f"reverse step {len(ops) - 1} broke 4-edge-connectivity")
    partner = next(v for v in work.vertices if v != root)
    ops.reverse()
    return MaderSequence(root, partner, tuple(work.edges), ops)  # type: ignore[arg-type]


def random_4ec(
    seed: int, n_ops: int, pinch_bias: float = 0.7
) -> tuple[MultiGraph, MaderSequence]:
    """Random 4-edge-connected graph built by ``n_ops`` Mader operations.

    Starts from the base graph at root 0. Deterministic in ``seed``.
    """
    if n_ops < 0:
        raise ValueError("n_ops must be non-negative")
    rng = random.Random(seed)
    g, seq = base_graph(0)
    for _ in range(n_ops):
        nv, ne = g.next_ids
        if rng.random() < pinch_bias:
            e1, e2 = rng.sample(g.edges, 2)
            op: MaderOp = Pinch(e1, e2, nv, ne, ne + 1, ne + 2, ne + 3)
        else:
            vs = g.vertices
            op = AddEdge(rng.choice(vs), rng.choice(vs), ne)
        apply_op(g, op)
        seq.ops.append(op)
    return g, seq


def format_sequence(seq: MaderSequence) -> str:
    lines = ["base {} {} {}".format(seq.root, seq.partner, " ".join(map(str, seq.base_edges)))]
    for op in seq.ops:
        if isinstance(op, AddEdge):
            lines.append(f"add {op.u} {op.v} -> {op.new_edge}")
        else:
            lines.append(
                f"pinch {op.e1} {op.e2} -> {op.new_vertex} {op.ex} {op.ey} {op.ez} {op.ew}"
            )
    return "\n".join(lines) + "\n"


def parse_sequence(text: str) -> MaderSequence:
    seq: MaderSequence | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.replace("->", " ").split()
        try:
            nums = [int(t) for t in tok[1:]]
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers") from None
        if seq is None:
            if tok[0] != "base" or len(nums) != 6:
                raise ValueError(f"line {lineno}: expected 'base root partner e0 e1 e2 e3'")
            seq = MaderSequence(nums[0], nums[1], tuple(nums[2:]))  # type: ignore[arg-type]
        elif tok[0] == "add" and len(nums) == 3:
            seq.ops.append(AddEdge(*nums))
        elif tok[0] == "pinch" and len(nums) == 7:
            seq.ops.append(Pinch(*nums))
        else:
            raise ValueError(f"line {lineno}: cannot parse {line!r}")
    if seq is None:
        raise ValueError("empty sequence")
    return seq
