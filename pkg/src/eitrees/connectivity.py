"""Unit-capacity max-flow and edge-connectivity queries on multigraphs.

Every edge has capacity one in either direction. Loops are ignored since
they never cross a cut. Queries that only need to know whether the value
reaches some threshold take a ``cap`` and stop after that many augmenting
paths.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

from .multigraph import MultiGraph

__all__ = [
    "CutReport",
    "FlowNetwork",
    "max_flow",
    "local_edge_connectivity",
    "edge_connectivity",
    "is_k_edge_connected",
    "is_4_edge_connected",
    "edge_disjoint_paths",
    "is_cut",
]


@dataclass(frozen=True)
class CutReport:
    """Value of a minimum cut plus one cut achieving it.

    ``side`` is the vertex set on the source side of ``witness_cut``.
    """

    value: int
    witness_cut: frozenset[int]
    side: frozenset[int]


class FlowNetwork:
    """Adjacency snapshot of a graph, reused across many flow queries.

    ``skip_vertex`` drops one vertex and its edges from the network.
    """

    def __init__(self, g: MultiGraph, skip_vertex: int | None = None):
        self.vertices = [v for v in g.vertices if v != skip_vertex]
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.edge_ids: list[int] = []
        self.tail: list[int] = []
        self.head: list[int] = []
        adj: list[list[int]] = [[] for _ in self.vertices]
        for e, (a, b) in g.edge_items():
            if a == b or a == skip_vertex or b == skip_vertex:
                continue
            k = len(self.edge_ids)
            self.edge_ids.append(e)
            ia, ib = self.index[a], self.index[b]
            self.tail.append(ia)
            self.head.append(ib)
            # arc 2k runs tail->head, arc 2k+1 runs head->tail
            adj[ia].append(2 * k)
            adj[ib].append(2 * k + 1)
        self.adj = adj

    def _run(self, sources: set[int], sinks: set[int], cap: int | None):
        """Augment from ``sources`` to ``sinks``; returns (value, flow, reached).

        ``reached`` is the residual-reachable set from the sources, or
        ``None`` when the search stopped at ``cap``.
        """
        tail, head, adj = self.tail, self.head, self.adj
        flow = [0] * len(tail)  # +1: tail->head, -1: head->tail
        n = len(self.vertices)
        value = 0
        while True:
            if cap is not None and value >= cap:
                return value, flow, None
            via = [-1] * n
            seen = [False] * n
            queue = deque()
            for s in sources:
                seen[s] = True
                queue.append(s)
            hit = -1
            while queue and hit < 0:
                a = queue.popleft()
                for arc in adj[a]:
                    k = arc >> 1
                    if arc & 1:
                        if flow[k] == -1:
                            continue
                        b = tail[k]
                    else:
                        if flow[k] == 1:
                            continue
                        b = head[k]
                    if seen[b]:
                        continue
                    seen[b] = True
                    via[b] = arc
                    if b in sinks:
                        hit = b
                        break
                    queue.append(b)
            if hit < 0:
                reached = {i for i in range(n) if seen[i]}
                return value, flow, reached
            b = hit
            while b not in sources:
                arc = via[b]
                k = arc >> 1
                if arc & 1:
                    flow[k] -= 1
                    b = head[k]
                else:
                    flow[k] += 1
                    b = tail[k]
            value += 1

    def value(self, sources: Iterable[int], sinks: Iterable[int], cap: int | None = None) -> int:
        src = {self.index[v] for v in sources}
        snk = {self.index[v] for v in sinks}
        if src & snk:
            raise ValueError("source and sink sets overlap")
        return self._run(src, snk, cap)[0]

    def min_cut(self, sources: Iterable[int], sinks: Iterable[int]) -> CutReport:
        src = {self.index[v] for v in sources}
        snk = {self.index[v] for v in sinks}
        if src & snk:
            raise ValueError("source and sink sets overlap")
        value, _, reached = self._run(src, snk, None)
        cut = frozenset(
            self.edge_ids[k]
            for k in range(len(self.tail))
            if (self.tail[k] in reached) != (self.head[k] in reached)
        )
        side = frozenset(self.vertices[i] for i in reached)
        return CutReport(value, cut, side)

    def paths(self, s: int, t: int) -> list[list[int]]:
        """A maximum set of edge-disjoint s-t paths, each an edge-id list."""
        si, ti = self.index[s], self.index[t]
        _, flow, _ = self._run({si}, {ti}, None)
        tail, head = self.tail, self.head
        out_arcs: dict[int, list[int]] = {}
        for k, f in enumerate(flow):
            if f == 1:
                out_arcs.setdefault(tail[k], []).append(k)
            elif f == -1:
                out_arcs.setdefault(head[k], []).append(k)
        result = []
        while out_arcs.get(si):
            walk_v = [si]
            walk_e: list[int] = []
            pos = {si: 0}
            a = si
            while a != ti:
                k = out_arcs[a].pop()
                b = head[k] if tail[k] == a else tail[k]
                if b in pos:
                    # drop the circulation just closed
                    cut_at = pos[b]
                    for w in walk_v[cut_at + 1:]:
                        del pos[w]
                    del walk_v[cut_at + 1:]
                    del walk_e[cut_at:]
                else:
                    pos[b] = len(walk_v)
                    walk_v.append(b)
                    walk_e.append(k)
                a = b
            result.append([self.edge_ids[k] for k in walk_e])
        return result


def _check_pair(g: MultiGraph, s: int, t: int) -> None:
    if s == t:
        raise ValueError("source and sink must differ")
    for v in (s, t):
        if not g.has_vertex(v):
            raise ValueError(f"unknown vertex {v}")


def max_flow(g: MultiGraph, s: int, t: int) -> CutReport:
    """Maximum number of edge-disjoint s-t paths with a minimum s-t cut."""
    _check_pair(g, s, t)
    return FlowNetwork(g).min_cut([s], [t])


def local_edge_connectivity(g: MultiGraph, s: int, t: int, cap: int | None = None) -> int:
    """``min(cap, lambda(s, t))``; cheaper than :func:`max_flow` when capped."""
    _check_pair(g, s, t)
    return FlowNetwork(g).value([s], [t], cap)


def edge_connectivity(g: MultiGraph) -> CutReport:
    """Global edge connectivity via flows from the smallest vertex id."""
    vs = g.vertices
    if len(vs) < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    net = FlowNetwork(g)
    s0 = vs[0]
    best: CutReport | None = None
    for t in vs[1:]:
        rep = net.min_cut([s0], [t])
        if best is None or rep.value < best.value:
            best = rep
            if best.value == 0:
                break
    assert best is not None
    return best


def is_k_edge_connected(g: MultiGraph, k: int) -> bool:
    vs = g.vertices
    if len(vs) < 2:
        raise ValueError("edge connectivity needs at least two vertices")
    net = FlowNetwork(g)
    return all(net.value([vs[0]], [t], k) >= k for t in vs[1:])


def is_4_edge_connected(g: MultiGraph) -> bool:
    return is_k_edge_connected(g, 4)


def edge_disjoint_paths(g: MultiGraph, s: int, t: int) -> list[list[int]]:
    _check_pair(g, s, t)
    return FlowNetwork(g).paths(s, t)


def is_cut(g: MultiGraph, cut: Iterable[int]) -> bool:
    """Whether deleting ``cut`` leaves the graph disconnected."""
    removed = set(cut)
    rest = [e for e in g.edges if e not in removed]
    covered = {v for e in rest for v in g.endpoints(e)}
    if len(covered) < g.number_of_vertices():
        return g.number_of_vertices() > 1
    return len(g.components(rest)) > 1
