"""Rooted chain decompositions: data model, validator and minimalizer.

A chain decomposition is an ordered list of chains partitioning the edge
set. For chain ``i`` let ``H`` be the union of the earlier chains and ``Hbar``
the union of the later ones. Then chain ``i`` must be one of

* an *up* chain: a path (or a cycle) whose vertices are all the root or have
  degree >= 2 in ``Hbar``, whose ends are the root or lie in ``H`` (for a
  cycle: whose designated end is the root or has degree >= 2 in ``H``);
* a *down* chain: the same with ``H`` and ``Hbar`` swapped;
* a *one-way* chain: a single edge whose tail is the root or has degree >= 2
  in ``H`` and whose head is the root or has degree >= 2 in ``Hbar``.

Chains store their walk explicitly, so a decomposition can be inspected
without the graph (this matters for edges that a later pinch deletes).
"""

from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass, field

from .multigraph import MultiGraph

__all__ = [
    "Kind",
    "Chain",
    "ChainDecomposition",
    "Violation",
    "ValidationReport",
    "validate",
    "minimality_violations",
    "is_minimal",
    "reverse",
    "minimalize",
    "base_decomposition",
    "format_decomposition",
    "parse_decomposition",
]


class Kind(enum.Enum):
    UP = "up"
    DOWN = "down"
    ONEWAY = "oneway"

    def flipped(self) -> Kind:
        if self is Kind.UP:
            return Kind.DOWN
        if self is Kind.DOWN:
            return Kind.UP
        return self


@dataclass(frozen=True)
class Chain:
    """One chain of a decomposition.

    ``vertices`` is the walk, one longer than ``edges``; ``edges[k]`` joins
    ``vertices[k]`` and ``vertices[k + 1]``. A one-way chain is walked from
    tail to head. An up or down chain whose walk returns to its start is
    closed, and that start is its end.
    """

    kind: Kind
    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    @classmethod
    def oneway(cls, tail: int, head: int, e: int) -> Chain:
        return cls(Kind.ONEWAY, (tail, head), (e,))

    @property
    def shape(self) -> str:
        if self.kind is Kind.ONEWAY:
            return "arc"
        return "closed" if self.vertices[0] == self.vertices[-1] else "open"

    @property
    def closed(self) -> bool:
        return self.shape == "closed"

    @property
    def tail(self) -> int:
        return self.vertices[0]

    @property
    def head(self) -> int:
        return self.vertices[-1]

    @property
    def ends(self) -> tuple[int, ...]:
        if self.shape == "closed":
            return (self.vertices[0],)
        return (self.vertices[0], self.vertices[-1])

    @property
    def internal(self) -> tuple[int, ...]:
        if self.kind is Kind.ONEWAY:
            return ()
        return self.vertices[1:-1]

    def edge_ends(self, k: int) -> tuple[int, int]:
        return self.vertices[k], self.vertices[k + 1]

    def position(self, e: int) -> int:
        return self.edges.index(e)

    def flipped(self) -> Chain:
        """This chain as seen in the reversed decomposition."""
        if self.kind is Kind.ONEWAY:
            return Chain(Kind.ONEWAY, self.vertices[::-1], self.edges)
        return Chain(self.kind.flipped(), self.vertices, self.edges)


class ChainDecomposition:
    """Ordered chains plus the edge -> chain index map ``ci``.

    Instances are treated as values: maintenance returns new objects.
    """

    def __init__(self, root: int, chains: list[Chain] | tuple[Chain, ...]):
        self.root = root
        self.chains: tuple[Chain, ...] = tuple(chains)
        self.ci: dict[int, int] = {}
        for i, c in enumerate(self.chains):
            for e in c.edges:
                if e in self.ci:
                    raise ValueError(f"edge {e} appears in chains {self.ci[e]} and {i}")
                self.ci[e] = i
        self._inc: dict[int, list[int]] | None = None

    def __len__(self) -> int:
        return len(self.chains)

    def __getitem__(self, i: int) -> Chain:
        return self.chains[i]

    def __iter__(self):
        return iter(self.chains)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainDecomposition):
            return NotImplemented
        return self.root == other.root and self.chains == other.chains

    def __repr__(self) -> str:
        return f"ChainDecomposition(root={self.root}, chains={len(self.chains)})"

    @property
    def edges(self) -> set[int]:
        return set(self.ci)

    def incidences(self, v: int) -> list[int]:
        """Sorted chain indices of ``v``'s incidences (loops counted twice)."""
        if self._inc is None:
            inc: dict[int, list[int]] = {}
            for i, c in enumerate(self.chains):
                for k in range(len(c.edges)):
                    a, b = c.edge_ends(k)
                    inc.setdefault(a, []).append(i)
                    inc.setdefault(b, []).append(i)
            self._inc = inc
        return self._inc.get(v, [])

    def deg_before(self, v: int, i: int) -> int:
        """Degree of ``v`` in the union of chains ``< i``."""
        return bisect_left(self.incidences(v), i)

    def deg_after(self, v: int, i: int) -> int:
        """Degree of ``v`` in the union of chains ``> i``."""
        inc = self.incidences(v)
        return len(inc) - bisect_right(inc, i)

    def vertex_set(self) -> set[int]:
        self.incidences(self.root)
        assert self._inc is not None
        return set(self._inc)

    def reversed(self) -> ChainDecomposition:
        return ChainDecomposition(self.root, [c.flipped() for c in reversed(self.chains)])


@dataclass(frozen=True)
class Violation:
    index: int | None
    reason: str

    def __str__(self) -> str:
        where = "decomposition" if self.index is None else f"chain {self.index}"
        return f"{where}: {self.reason}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def _shape_problems(g: MultiGraph, c: Chain) -> list[str]:
    out = []
    if not c.edges:
        return ["chain has no edges"]
    if len(c.vertices) != len(c.edges) + 1:
        return ["walk length does not match edge count"]
    if c.kind is Kind.ONEWAY and len(c.edges) != 1:
        out.append("one-way chain must have exactly one edge")
    if len(set(c.edges)) != len(c.edges):
        out.append("repeated edge in chain")
    for k, e in enumerate(c.edges):
        if not g.has_edge(e):
            out.append(f"edge {e} not in graph")
            continue
        if sorted(g.endpoints(e)) != sorted(c.edge_ends(k)):
            out.append(f"edge {e} does not join {c.edge_ends(k)}")
    if c.kind is not Kind.ONEWAY:
        walk = c.vertices[:-1] if c.closed else c.vertices
        if len(set(walk)) != len(walk):
            out.append("walk is not a simple path or cycle")
    return out


def validate(g: MultiGraph, d: ChainDecomposition) -> ValidationReport:
    """Check ``d`` against every condition of a rooted chain decomposition."""
    r = d.root
    bad: list[Violation] = []
    if not g.has_vertex(r):
        bad.append(Violation(None, f"root {r} not in graph"))
    seen: set[int] = set()
    for i, c in enumerate(d.chains):
        for p in _shape_problems(g, c):
            bad.append(Violation(i, p))
        seen.update(c.edges)
    missing = set(g.edges) - seen
    if missing:
        bad.append(Violation(None, f"edges {sorted(missing)} not covered"))
    if bad:
        return ValidationReport(bad)

    total: Counter[int] = Counter()
    for e, (a, b) in g.edge_items():
        total[a] += 1
        total[b] += 1
    before: Counter[int] = Counter()
    for i, c in enumerate(d.chains):
        own: Counter[int] = Counter()
        for e in c.edges:
            a, b = g.endpoints(e)
            own[a] += 1
            own[b] += 1

        def h(v: int) -> int:
            return before[v]

        def hbar(v: int) -> int:
            return total[v] - before[v] - own[v]

        if c.kind is Kind.ONEWAY:
            if c.tail != r and h(c.tail) < 2:
                bad.append(Violation(i, f"tail {c.tail} has degree {h(c.tail)} in earlier chains"))
            if c.head != r and hbar(c.head) < 2:
                bad.append(Violation(i, f"head {c.head} has degree {hbar(c.head)} in later chains"))
        else:
            # an up chain leans on later chains for its vertices, earlier for
            # its ends; a down chain the other way round
            near, far = (h, hbar) if c.kind is Kind.UP else (hbar, h)
            near_name, far_name = ("earlier", "later") if c.kind is Kind.UP else ("later", "earlier")
            for v in set(c.vertices):
                if v != r and far(v) < 2:
                    bad.append(Violation(i, f"vertex {v} has degree {far(v)} in {far_name} chains"))
            if c.closed:
                end = c.vertices[0]
                if end != r and near(end) < 2:
                    bad.append(Violation(i, f"closed end {end} has degree {near(end)} in {near_name} chains"))
            else:
                for end in c.ends:
                    if end != r and near(end) < 1:
                        bad.append(Violation(i, f"end {end} not in {near_name} chains"))
        before.update(own)
    return ValidationReport(bad)


def minimality_violations(d: ChainDecomposition) -> list[Violation]:
    r = d.root
    out = []
    for i, c in enumerate(d.chains):
        if c.kind is Kind.ONEWAY:
            continue
        for v in c.internal:
            touched = d.deg_before(v, i) if c.kind is Kind.UP else d.deg_after(v, i)
            if v == r or touched:
                out.append(Violation(i, f"internal vertex {v} is the root or already used"))
    return out


def is_minimal(d: ChainDecomposition) -> bool:
    return not minimality_violations(d)


def reverse(d: ChainDecomposition) -> ChainDecomposition:
    """Reverse chain order, swapping up/down and one-way tails/heads."""
    return d.reversed()


def _split_walk(c: Chain, cut_at: list[int]) -> list[Chain]:
    pieces = []
    start = 0
    for k in cut_at + [len(c.edges)]:
        pieces.append(Chain(c.kind, c.vertices[start:k + 1], c.edges[start:k]))
        start = k
    return pieces


def minimalize(d: ChainDecomposition) -> ChainDecomposition:
    """Break up/down chains at internal vertices that are root or reused.

    The pieces replace the original chain at its index, in walk order.
    """
    r = d.root
    out: list[Chain] = []
    changed = False
    for i, c in enumerate(d.chains):
        if c.kind is Kind.ONEWAY or len(c.edges) < 2:
            out.append(c)
            continue
        touched = d.deg_before if c.kind is Kind.UP else d.deg_after
        cut_at = [
            k for k in range(1, len(c.edges)) if c.vertices[k] == r or touched(c.vertices[k], i)
        ]
        if cut_at:
            changed = True
            out.extend(_split_walk(c, cut_at))
        else:
            out.append(c)
    return ChainDecomposition(r, out) if changed else d


def base_decomposition(
    root: int = 0, partner: int | None = None, edge_ids: tuple[int, ...] = (0, 1, 2, 3)
) -> ChainDecomposition:
    """Closed up chain on two base edges, then closed down chain on the rest."""
    if partner is None:
        partner = root + 1
    a, b, c, e = edge_ids
    return ChainDecomposition(
        root,
        [
            Chain(Kind.UP, (root, partner, root), (a, b)),
            Chain(Kind.DOWN, (root, partner, root), (c, e)),
        ],
    )


def format_decomposition(d: ChainDecomposition) -> str:
    lines = []
    for i, c in enumerate(d.chains):
        ids = ",".join(map(str, c.edges))
        if c.shape == "arc":
            where = f"arc {c.tail} {c.head}"
        elif c.shape == "closed":
            where = f"closed {c.vertices[0]}"
        else:
            where = f"open {c.vertices[0]} {c.vertices[-1]}"
        lines.append(f"{i} {c.kind.value} edges={ids} {where}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_decomposition(text: str, g: MultiGraph, root: int) -> ChainDecomposition:
    """Inverse of :func:`format_decomposition`; walks are rebuilt from ``g``."""
    chains = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        try:
            kind = Kind(tok[1])
            if not tok[2].startswith("edges="):
                raise ValueError
            edges = tuple(int(t) for t in tok[2][len("edges="):].split(","))
            start = int(tok[4])
        except (IndexError, ValueError):
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
        walk = [start]
        for e in edges:
            walk.append(g.other_end(e, walk[-1]))
        chains.append(Chain(kind, tuple(walk), edges))
    return ChainDecomposition(root, chains)
