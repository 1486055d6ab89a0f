"""Structural facts every rooted chain decomposition satisfies.

These are consequences of the definitions, checked independently of how a
decomposition was produced:

* ``prefix_connectivity``: every prefix union ``H_i`` and suffix union is
  connected, and a cut edge of one is a one-way chain hanging off a vertex
  that has no other edge there;
* ``loop_support``: a non-root vertex touching a loop in a prefix (suffix)
  already has two non-loop edges there;
* ``degree_two_indices``: in a minimal decomposition every non-root vertex
  has degree exactly two in some prefix and in some suffix;
* ``min_degree``: every non-root vertex has degree at least four.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import ChainDecomposition, Kind

__all__ = [
    "StructureViolation",
    "StructureReport",
    "prefix_connectivity",
    "loop_support",
    "degree_two_indices",
    "min_degree",
    "check_structure",
]


@dataclass(frozen=True)
class StructureViolation:
    check: str
    where: str
    reason: str

    def __str__(self) -> str:
        return f"{self.check} at {self.where}: {self.reason}"


@dataclass
class StructureReport:
    violations: list[StructureViolation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "ok" if self.ok else "; ".join(map(str, self.violations))


def _edge_list(d: ChainDecomposition) -> list[tuple[int, int, int, int]]:
    """``(chain index, edge, a, b)`` in chain order."""
    out = []
    for i, c in enumerate(d.chains):
        for k, e in enumerate(c.edges):
            a, b = c.edge_ends(k)
            out.append((i, e, a, b))
    return out


class _DSU:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def add(self, a: int) -> bool:
        if a in self.parent:
            return False
        self.parent[a] = a
        return True

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _prefix_side(d: ChainDecomposition, side: str) -> list[StructureViolation]:
    m = len(d.chains) - 1
    edges = _edge_list(d)
    out: list[StructureViolation] = []

    # connectivity of H_1 .. H_m, chain by chain
    dsu = _DSU()
    comps = 0
    pos = 0
    for i in range(1, m + 1):
        while pos < len(edges) and edges[pos][0] < i:
            _, _, a, b = edges[pos]
            comps += dsu.add(a) + dsu.add(b)
            comps -= dsu.union(a, b)
            pos += 1
        if comps != 1:
            out.append(StructureViolation("prefix_connectivity", f"{side} {i}", f"{comps} components"))

    # Kruskal in chain order: the forest edges with index < i span H_i, and a
    # forest edge is a bridge of H_i until the first non-forest edge covering it
    forest = _DSU()
    adj: dict[int, list[tuple[int, int]]] = {}
    tree_ci: dict[int, int] = {}
    extra: list[tuple[int, int, int]] = []
    for i, e, a, b in edges:
        forest.add(a)
        forest.add(b)
        if forest.union(a, b):
            adj.setdefault(a, []).append((b, e))
            adj.setdefault(b, []).append((a, e))
            tree_ci[e] = i
        elif a != b:
            extra.append((i, a, b))
    up: dict[int, tuple[int, int] | None] = {}
    depth: dict[int, int] = {}
    for s in adj:
        if s in depth:
            continue
        depth[s] = 0
        up[s] = None
        stack = [s]
        while stack:
            a = stack.pop()
            for b, e in adj[a]:
                if b not in depth:
                    depth[b] = depth[a] + 1
                    up[b] = (a, e)
                    stack.append(b)
    cover: dict[int, int] = {}
    # jump[v] skips ancestors whose parent edge is already covered
    jump: dict[int, int] = {v: v for v in depth}

    def top(v: int) -> int:
        path = []
        while jump[v] != v:
            path.append(v)
            v = jump[v]
        for w in path:
            jump[w] = v
        return v

    for i, a, b in extra:
        a, b = top(a), top(b)
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            parent = up[a]
            assert parent is not None
            cover[parent[1]] = i
            jump[a] = parent[0]
            a = top(a)

    for e, ci in tree_ci.items():
        last = min(cover.get(e, m), m)  # last prefix where e is a bridge
        if ci + 1 > last:
            continue
        c = d.chains[ci]
        if c.kind is not Kind.ONEWAY:
            out.append(StructureViolation("prefix_connectivity", f"{side} {last}", f"cut edge {e} is in a {c.kind.value} chain"))
            continue
        if not any(d.deg_before(v, last) == 1 for v in c.vertices):
            out.append(
                StructureViolation("prefix_connectivity", f"{side} {last}", f"cut edge {e} does not isolate a vertex")
            )
    return out


def prefix_connectivity(d: ChainDecomposition) -> list[StructureViolation]:
    """Connectivity and cut-edge shape of every prefix and suffix union."""
    return _prefix_side(d, "prefix") + _prefix_side(d.reversed(), "suffix")


def loop_support(d: ChainDecomposition) -> list[StructureViolation]:
    out = []
    for side, dd in (("prefix", d), ("suffix", d.reversed())):
        plain: dict[int, list[int]] = {}
        loops: list[tuple[int, int]] = []
        for i, _, a, b in _edge_list(dd):
            if a == b:
                loops.append((i, a))
            else:
                plain.setdefault(a, []).append(i)
                plain.setdefault(b, []).append(i)
        for i, v in loops:
            if v == d.root:
                continue
            n = sum(1 for k in plain.get(v, []) if k < i)
            if n < 2:
                out.append(StructureViolation("loop_support", f"{side} vertex {v}", f"{n} non-loop edges before loop chain {i}"))
    return out


def degree_two_indices(d: ChainDecomposition) -> list[StructureViolation]:
    """Needs a minimal decomposition."""
    out = []
    for v in sorted(d.vertex_set()):
        if v == d.root:
            continue
        inc = d.incidences(v)
        # degree in H_i is 2 exactly for inc[1] < i <= inc[2]
        if len(inc) < 3 or not inc[1] < inc[2]:
            out.append(StructureViolation("degree_two_indices", f"vertex {v}", "no prefix with degree exactly two"))
        if len(inc) < 3 or not inc[-3] < inc[-2]:
            out.append(StructureViolation("degree_two_indices", f"vertex {v}", "no suffix with degree exactly two"))
    return out


def min_degree(d: ChainDecomposition) -> list[StructureViolation]:
    return [
        StructureViolation("min_degree", f"vertex {v}", f"degree {len(d.incidences(v))}")
        for v in sorted(d.vertex_set())
        if v != d.root and len(d.incidences(v)) < 4
    ]


def check_structure(d: ChainDecomposition, *, minimal: bool = True) -> StructureReport:
    out = prefix_connectivity(d) + loop_support(d) + min_degree(d)
    if minimal:
        out += degree_two_indices(d)
    return StructureReport(out)
