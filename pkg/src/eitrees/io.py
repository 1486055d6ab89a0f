"""Edge-list files and DOT export.

An edge-list file starts with a header ``n m r`` (vertex count, edge count,
root) followed by ``m`` lines ``u v``. Vertices are ``0..n-1`` and edge ids
are the line positions ``0..m-1``. Blank lines and ``#`` comments are
ignored. Parallel edges and loops are allowed.
"""

from __future__ import annotations

from .chains import ChainDecomposition, Kind
from .multigraph import MultiGraph
from .numbering import TreeSet

__all__ = ["EdgeListError", "parse_edge_list", "format_edge_list", "to_dot", "TREE_COLORS"]

TREE_COLORS = ("red", "blue", "forestgreen", "darkorange")


class EdgeListError(ValueError):
    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        where = "" if lineno is None else f"line {lineno}: "
        super().__init__(where + message)


def parse_edge_list(text: str) -> tuple[MultiGraph, int]:
    """Parse an edge-list file; returns ``(graph, root)``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise EdgeListError(None, "empty file, expected header 'n m r'")
    lineno, head = rows[0]
    try:
        if len(head) != 3:
            raise ValueError
        n, m, r = (int(t) for t in head)
    except ValueError:
        raise EdgeListError(lineno, "malformed header, expected 'n m r'") from None
    if n < 0 or m < 0:
        raise EdgeListError(lineno, "negative count in header")
    if not 0 <= r < n:
        raise EdgeListError(lineno, f"root {r} out of range 0..{n - 1}")
    body = rows[1:]
    if len(body) != m:
        raise EdgeListError(body[-1][0] if body else lineno, f"header promises {m} edges, found {len(body)}")
    g = MultiGraph()
    for _ in range(n):
        g.add_vertex()
    for lineno, tok in body:
        try:
            if len(tok) != 2:
                raise ValueError
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListError(lineno, "expected 'u v'") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(lineno, f"vertex out of range 0..{n - 1}")
        g.add_edge(u, v)
    return g, r


def format_edge_list(g: MultiGraph, root: int) -> str:
    """Serialize ``g``; vertices are renumbered in id order and edges written
    in id order, so a graph with ids ``0..n-1`` / ``0..m-1`` round-trips."""
    pos = {v: k for k, v in enumerate(g.vertices)}
    lines = [f"{g.number_of_vertices()} {g.number_of_edges()} {pos[root]}"]
    for _, (a, b) in g.edge_items():
        lines.append(f"{pos[a]} {pos[b]}")
    return "\n".join(lines) + "\n"


def to_dot(
    g: MultiGraph,
    root: int,
    trees: TreeSet | None = None,
    d: ChainDecomposition | None = None,
    name: str = "G",
) -> str:
    """Graphviz source with edges colored by tree membership.

    An edge in several trees gets a multi-color stroke; an edge in none is
    grey. Edges of one-way chains in ``d`` are drawn as arrows from tail to
    head.
    """
    member: dict[int, list[int]] = {}
    if trees is not None:
        for k, parent in enumerate(trees.parents):
            for e in parent.values():
                member.setdefault(e, []).append(k)
    arcs = {}
    if d is not None:
        for c in d.chains:
            if c.kind is Kind.ONEWAY:
                arcs[c.edges[0]] = (c.tail, c.head)
    out = [f"graph {name} {{", f'  {root} [shape=doublecircle];']
    for v in g.vertices:
        if v != root:
            out.append(f"  {v};")
    for e, (a, b) in g.edge_items():
        attrs = [f'label="{e}"']
        ks = member.get(e, [])
        if ks:
            attrs.append('color="{}"'.format(":".join(TREE_COLORS[k] for k in ks)))
        else:
            attrs.append('color="grey"')
        if e in arcs:
            a, b = arcs[e]
            attrs.append("dir=forward")
        out.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
