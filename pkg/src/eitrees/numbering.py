"""Edge numberings ``f`` and ``g`` and the four trees built from them.

``f`` numbers the edges of up and one-way chains, chain by chain, so that
walking a tree-1 path toward the root strictly lowers ``f``; ``g`` is the
same construction on the reversed decomposition. Values are exact
fractions so strict comparisons never suffer rounding.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction

from .chains import Chain, ChainDecomposition, Kind
from .errors import InvariantError
from .multigraph import MultiGraph

__all__ = [
    "EdgeNumbering",
    "TreeSet",
    "IndependenceViolation",
    "IndependenceReport",
    "strip_loops",
    "f_edges",
    "g_edges",
    "compute_f",
    "compute_g",
    "build_trees",
    "verify_independence",
    "tree_path",
    "four_disjoint_paths",
    "format_trees",
    "parse_trees",
    "format_numbering",
]


@dataclass
class EdgeNumbering:
    values: dict[int, Fraction] = field(default_factory=dict)

    def __getitem__(self, e: int) -> Fraction:
        return self.values[e]

    def __contains__(self, e: object) -> bool:
        return e in self.values

    def __len__(self) -> int:
        return len(self.values)


def strip_loops(g: MultiGraph, d: ChainDecomposition) -> tuple[MultiGraph, ChainDecomposition]:
    """Drop loop edges and their one-way chains; other chains keep their order."""
    loops = [e for e in g.edges if g.is_loop(e)]
    if not loops:
        return g, d
    h = g.copy()
    for e in loops:
        h.delete_edge(e)
    keep = [c for c in d.chains if not (c.kind is Kind.ONEWAY and c.tail == c.head)]
    if sum(len(c.edges) for c in keep) != h.number_of_edges():
        raise InvariantError("a loop sits in a chain that is not one-way")
    return h, ChainDecomposition(d.root, keep)


class _Index:
    """Per-vertex ``(chain index, edge)`` lists, built once per decomposition."""

    def __init__(self, d: ChainDecomposition):
        self.by_vertex: dict[int, list[tuple[int, int]]] = {}
        for i, c in enumerate(d.chains):
            for k, e in enumerate(c.edges):
                a, b = c.edge_ends(k)
                if a == b:
                    raise InvariantError(f"loop {e} left in the decomposition")
                self.by_vertex.setdefault(a, []).append((i, e))
                self.by_vertex.setdefault(b, []).append((i, e))
        for lst in self.by_vertex.values():
            lst.sort()
        self.root = d.root

    def f_edges(self, v: int) -> tuple[int, int]:
        if v == self.root:
            raise ValueError("the root has no f-edges")
        inc = self.by_vertex.get(v)
        if not inc or len(inc) < 2:
            raise InvariantError(f"vertex {v} has fewer than two edges")
        if len(inc) > 2 and not inc[1][0] < inc[2][0]:
            raise InvariantError(f"vertex {v}: second and third lowest chain indices tie")
        return inc[0][1], inc[1][1]


def f_edges(d: ChainDecomposition, v: int) -> tuple[int, int]:
    """The two edges at ``v`` of lowest chain index (ties broken by id)."""
    return _Index(d).f_edges(v)


def g_edges(d: ChainDecomposition, v: int) -> tuple[int, int]:
    """The two edges at ``v`` of highest chain index."""
    return _Index(d.reversed()).f_edges(v)


class _Values:
    """Assigned values kept sorted, for "next value above" queries."""

    def __init__(self) -> None:
        self.map: dict[int, Fraction] = {}
        self.sorted: list[Fraction] = []

    def high(self) -> Fraction:
        return self.sorted[-1] if self.sorted else Fraction(-1)

    def above(self, a: Fraction) -> Fraction | None:
        k = bisect_right(self.sorted, a)
        return self.sorted[k] if k < len(self.sorted) else None

    def put(self, e: int, x: Fraction) -> None:
        k = bisect_right(self.sorted, x)
        if k and self.sorted[k - 1] == x:
            raise InvariantError(f"value {x} assigned twice")
        self.sorted.insert(k, x)
        self.map[e] = x

    def fresh(self, n: int) -> list[Fraction]:
        """``n`` increasing values above everything assigned so far."""
        top = self.high()
        return [top + k for k in range(1, n + 1)]

    def between(self, a: Fraction, b: Fraction, n: int) -> list[Fraction]:
        """``n`` increasing values strictly between ``a < b`` with no
        assigned value among them or between them and ``a``."""
        c = self.above(a)
        if c is None or c > b:
            c = b
        step = (c - a) / (n + 1)
        return [a + step * k for k in range(1, n + 1)]


def _walk_from(c: Chain, start: int, first: int | None = None) -> list[int]:
    """Edges of ``c`` in walk order from end ``start``; for a closed chain
    ``first`` picks which end edge leads."""
    if c.closed:
        if first is None or c.edges[0] == first:
            return list(c.edges)
        return list(reversed(c.edges))
    if c.vertices[0] == start:
        return list(c.edges)
    return list(reversed(c.edges))


def compute_f(d: ChainDecomposition) -> EdgeNumbering:
    """Number up and one-way chain edges in chain order.

    ``d`` must be minimal and loopless. "Arbitrary" values are taken above
    every value so far, and "between ``a`` and ``b``" values are spread
    evenly just above ``a``, below the next value already in use.
    """
    r = d.root
    idx = _Index(d)
    vals = _Values()

    def numbered_f(v: int, i: int) -> list[int]:
        # f-edges of v in H_i; all have been numbered by now
        es = [e for ci, e in idx.by_vertex[v][:2] if ci < i]
        for e in es:
            if e not in vals.map:
                raise InvariantError(f"f-edge {e} of {v} should already be numbered", rule=f"chain {i}")
        return es

    for i, c in enumerate(d.chains):
        if c.kind is Kind.DOWN:
            continue
        n = len(c.edges)
        if c.kind is Kind.ONEWAY:
            if c.tail == r:
                order, xs = list(c.edges), vals.fresh(1)
            else:
                es = numbered_f(c.tail, i)
                if len(es) != 2:
                    raise InvariantError(f"tail {c.tail} lacks two numbered f-edges", rule=f"chain {i}")
                a, b = sorted(vals.map[e] for e in es)
                order, xs = list(c.edges), vals.between(a, b, 1)
        elif c.closed:
            end = c.vertices[0]
            order = _walk_from(c, end, min(c.edges[0], c.edges[-1]))
            if end == r:
                xs = vals.fresh(n)
            else:
                es = numbered_f(end, i)
                if len(es) != 2:
                    raise InvariantError(f"closed end {end} lacks two numbered f-edges", rule=f"chain {i}")
                a, b = sorted(vals.map[e] for e in es)
                xs = vals.between(a, b, n)
        elif r in c.ends:
            u = c.vertices[0] if c.vertices[-1] == r else c.vertices[-1]
            es = numbered_f(u, i)
            if not es:
                raise InvariantError(f"end {u} has no numbered f-edge", rule=f"chain {i}")
            # numbering edge: the smaller value; values rise from u to r, all
            # above it (fresh values are above everything)
            order, xs = _walk_from(c, u), vals.fresh(n)
        else:
            u, v = c.vertices[0], c.vertices[-1]
            eu, ev = sorted(numbered_f(u, i)), sorted(numbered_f(v, i))
            pick = next(((a, b) for a in eu for b in ev if a != b), None)
            if pick is None:
                raise InvariantError(f"ends {u}, {v} share their only numbered f-edge", rule=f"chain {i}")
            fa, fb = vals.map[pick[0]], vals.map[pick[1]]
            if fa > fb:
                u, v, fa, fb = v, u, fb, fa
            order, xs = _walk_from(c, u), vals.between(fa, fb, n)
        for e, x in zip(order, xs):
            vals.put(e, x)
    return EdgeNumbering(vals.map)


def compute_g(d: ChainDecomposition) -> EdgeNumbering:
    return compute_f(d.reversed())


@dataclass
class TreeSet:
    """Four parent maps ``vertex -> edge`` plus the edge endpoints they use."""

    root: int
    parents: tuple[dict[int, int], dict[int, int], dict[int, int], dict[int, int]]

    def __getitem__(self, k: int) -> dict[int, int]:
        return self.parents[k]


def build_trees(
    g: MultiGraph, d: ChainDecomposition, f: EdgeNumbering, gnum: EdgeNumbering
) -> TreeSet:
    """Assign each vertex's f-edges to trees 1/2 and g-edges to trees 3/4.

    Checks, for every vertex, that one step toward the root moves as the
    construction promises: trees 1 and 2 never raise chain index while
    lowering (tree 1) or raising (tree 2) ``f``, trees 3 and 4 never lower
    chain index while lowering or raising ``g``. Also checks that the
    f-edges sit strictly before the g-edges.
    """
    r = d.root
    fi = _Index(d)
    gi = _Index(d.reversed())
    ci = d.ci
    parents: tuple[dict[int, int], ...] = ({}, {}, {}, {})
    for v in g.vertices:
        if v == r:
            continue
        fe = fi.f_edges(v)
        ge = gi.f_edges(v)
        try:
            lo_f, hi_f = sorted(fe, key=f.values.__getitem__)
            lo_g, hi_g = sorted(ge, key=gnum.values.__getitem__)
        except KeyError as exc:
            raise InvariantError(f"vertex {v}: edge {exc.args[0]} has no value") from None
        if max(ci[e] for e in fe) >= min(ci[e] for e in ge):
            raise InvariantError(f"vertex {v}: f-edges do not precede g-edges")
        parents[0][v], parents[1][v] = lo_f, hi_f
        parents[2][v], parents[3][v] = lo_g, hi_g

    def step(k: int, v: int) -> int | None:
        w = g.other_end(parents[k][v], v)
        return None if w == r else w

    for v in parents[0]:
        checks = (
            (0, f, lambda a, b: a < b, 1),
            (1, f, lambda a, b: a > b, 1),
            (2, gnum, lambda a, b: a < b, -1),
            (3, gnum, lambda a, b: a > b, -1),
        )
        for k, num, better, sign in checks:
            w = step(k, v)
            if w is None:
                continue
            e, e2 = parents[k][v], parents[k][w]
            if sign * (ci[e2] - ci[e]) > 0 or not better(num[e2], num[e]):
                raise InvariantError(f"tree {k + 1} is not monotone at vertex {v}")
    return TreeSet(r, parents)  # type: ignore[arg-type]


@dataclass(frozen=True)
class IndependenceViolation:
    vertex: int | None
    trees: tuple[int, ...]
    edge: int | None
    reason: str

    def __str__(self) -> str:
        where = "" if self.vertex is None else f"vertex {self.vertex} "
        ts = "/".join(f"T{k}" for k in self.trees)
        return f"{where}{ts}: {self.reason}"


@dataclass
class IndependenceReport:
    violations: list[IndependenceViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "ok" if self.ok else "\n".join(map(str, self.violations))


def tree_path(g: MultiGraph, root: int, parent: dict[int, int], v: int) -> list[int]:
    """Edges from ``v`` up to ``root``; raises ``ValueError`` on a bad tree."""
    path = []
    seen = {v}
    while v != root:
        if v not in parent:
            raise ValueError(f"vertex {v} has no parent")
        e = parent[v]
        if not g.has_edge(e):
            raise ValueError(f"parent edge {e} of {v} is not in the graph")
        a, b = g.endpoints(e)
        if v not in (a, b) or a == b:
            raise ValueError(f"parent edge {e} does not lead away from {v}")
        path.append(e)
        v = b if a == v else a
        if v in seen:
            raise ValueError(f"cycle through vertex {v}")
        seen.add(v)
    return path


def verify_independence(g: MultiGraph, root: int, t: TreeSet) -> IndependenceReport:
    """Check that four parent maps are spanning trees with pairwise
    edge-disjoint root paths. Uses nothing but the graph and the maps."""
    bad: list[IndependenceViolation] = []
    if not g.has_vertex(root):
        return IndependenceReport([IndependenceViolation(None, (), None, f"root {root} not in graph")])
    others = [v for v in g.vertices if v != root]
    paths: list[dict[int, list[int]]] = []
    for k, parent in enumerate(t.parents, 1):
        extra = set(parent) - set(others)
        if extra:
            bad.append(IndependenceViolation(None, (k,), None, f"not a spanning tree: parents for {sorted(extra)}"))
        pk: dict[int, list[int]] = {}
        for v in others:
            try:
                pk[v] = tree_path(g, root, parent, v)
            except ValueError as exc:
                bad.append(IndependenceViolation(v, (k,), None, f"not a spanning tree: {exc}"))
        paths.append(pk)
    if bad:
        return IndependenceReport(bad)
    for v in others:
        for a in range(4):
            pa = set(paths[a][v])
            for b in range(a + 1, 4):
                for e in paths[b][v]:
                    if e in pa:
                        bad.append(IndependenceViolation(v, (a + 1, b + 1), e, f"paths share edge {e}"))
                        break
    return IndependenceReport(bad)


def four_disjoint_paths(g: MultiGraph, root: int, t: TreeSet, v: int) -> list[list[int]]:
    """The four tree paths from ``v`` to the root."""
    if v == root:
        raise ValueError("v must differ from the root")
    return [tree_path(g, root, parent, v) for parent in t.parents]


def format_trees(t: TreeSet) -> str:
    lines = []
    for k, parent in enumerate(t.parents, 1):
        lines.append(f"tree {k}:")
        for v in sorted(parent):
            lines.append(f"{v} parent_edge={parent[v]}")
    return "\n".join(lines) + "\n"


def parse_trees(text: str, root: int) -> TreeSet:
    parents: list[dict[int, int]] = []
    cur: dict[int, int] | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("tree"):
            head = line[len("tree"):].rstrip(":").strip()
            if not head.isdigit() or int(head) != len(parents) + 1:
                raise ValueError(f"line {lineno}: expected 'tree {len(parents) + 1}:'")
            cur = {}
            parents.append(cur)
            continue
        tok = line.split()
        if cur is None or len(tok) != 2 or not tok[1].startswith("parent_edge="):
            raise ValueError(f"line {lineno}: expected '<vertex> parent_edge=<id>'")
        try:
            v, e = int(tok[0]), int(tok[1][len("parent_edge="):])
        except ValueError:
            raise ValueError(f"line {lineno}: expected integers") from None
        if v in cur:
            raise ValueError(f"line {lineno}: vertex {v} listed twice")
        cur[v] = e
    if len(parents) != 4:
        raise ValueError(f"expected 4 trees, found {len(parents)}")
    return TreeSet(root, tuple(parents))  # type: ignore[arg-type]


def format_numbering(f: EdgeNumbering, name: str = "f") -> str:
    return "".join(
        f"{e} {name}={x.numerator}/{x.denominator}\n" for e, x in sorted(f.values.items())
    )
