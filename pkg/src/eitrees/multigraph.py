"""Undirected multigraph with stable integer vertex and edge ids.

Loops and parallel edges are allowed. A loop contributes two to the degree
of its vertex. Ids come from monotone counters and are never reused, so an
edge keeps its id through any sequence of unrelated mutations.
"""

from __future__ import annotations

from collections.abc import Collection, Iterable, Iterator

from .errors import GraphError

__all__ = ["MultiGraph"]


class MultiGraph:
    """A multigraph keyed by integer ids.

    Endpoints are stored as an ordered pair; the order carries no meaning for
    connectivity but is preserved so that operations that care about "which
    end is which" (pinching, suturing) are reproducible.

    Examples
    --------
    >>> g = MultiGraph()
    >>> a, b = g.add_vertex(), g.add_vertex()
    >>> e = g.add_edge(a, b)
    >>> f = g.add_edge(a, a)
    >>> g.degree(a)
    3
    """

    def __init__(self) -> None:
        self._ends: dict[int, tuple[int, int]] = {}
        # vertex -> ordered set of incident edge ids (a loop appears once)
        self._inc: dict[int, dict[int, None]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    # -- construction -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> MultiGraph:
        """Graph on vertices ``0..n-1`` with edge ids assigned in order."""
        g = cls()
        for _ in range(n):
            g.add_vertex()
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def add_vertex(self, vid: int | None = None) -> int:
        """Add a vertex and return its id.

        With ``vid`` given, that exact id is used (it must be unused); the
        counter is advanced past it.
        """
        if vid is None:
            vid = self._next_vertex
        elif vid < 0:
            raise GraphError(f"negative vertex id {vid}")
        if vid in self._inc:
            raise GraphError(f"vertex {vid} already exists")
        self._inc[vid] = {}
        self._next_vertex = max(self._next_vertex, vid + 1)
        return vid

    def add_edge(self, u: int, v: int, eid: int | None = None) -> int:
        if u not in self._inc or v not in self._inc:
            raise GraphError(f"missing endpoint: edge ({u}, {v})")
        if eid is None:
            eid = self._next_edge
        elif eid < 0:
            raise GraphError(f"negative edge id {eid}")
        if eid in self._ends:
            raise GraphError(f"edge {eid} already exists")
        self._ends[eid] = (u, v)
        self._inc[u][eid] = None
        self._inc[v][eid] = None
        self._next_edge = max(self._next_edge, eid + 1)
        return eid

    def delete_edge(self, e: int) -> None:
        try:
            u, v = self._ends.pop(e)
        except KeyError:
            raise GraphError(f"unknown edge {e}") from None
        del self._inc[u][e]
        if v != u:
            del self._inc[v][e]

    def remove_isolated_vertex(self, v: int) -> None:
        """Drop a vertex with no incident edges. Its id is retired."""
        if v not in self._inc:
            raise GraphError(f"unknown vertex {v}")
        if self._inc[v]:
            raise GraphError(f"vertex {v} is not isolated")
        del self._inc[v]

    def copy(self) -> MultiGraph:
        h = MultiGraph()
        h._ends = dict(self._ends)
        h._inc = {v: dict(es) for v, es in self._inc.items()}
        h._next_vertex = self._next_vertex
        h._next_edge = self._next_edge
        return h

    # -- queries ----------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self._inc)

    @property
    def edges(self) -> list[int]:
        return sorted(self._ends)

    @property
    def next_ids(self) -> tuple[int, int]:
        """The (vertex, edge) ids the counters would hand out next."""
        return self._next_vertex, self._next_edge

    def number_of_vertices(self) -> int:
        return len(self._inc)

    def number_of_edges(self) -> int:
        return len(self._ends)

    def has_vertex(self, v: int) -> bool:
        return v in self._inc

    def has_edge(self, e: int) -> bool:
        return e in self._ends

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._ends[e]
        except KeyError:
            raise GraphError(f"unknown edge {e}") from None

    def other_end(self, e: int, v: int) -> int:
        a, b = self.endpoints(e)
        if a == v:
            return b
        if b == v:
            return a
        raise GraphError(f"edge {e} is not incident to {v}")

    def is_loop(self, e: int) -> bool:
        a, b = self.endpoints(e)
        return a == b

    def incident(self, v: int) -> list[int]:
        """Incident edge ids in insertion order; a loop is listed once."""
        try:
            return list(self._inc[v])
        except KeyError:
            raise GraphError(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return sum(2 if self._ends[e][0] == self._ends[e][1] else 1 for e in self.incident(v))

    def degree_in(self, v: int, s: Collection[int]) -> int:
        """Degree of ``v`` counting only edges of ``s`` (loops count twice)."""
        d = 0
        for e in self.incident(v):
            if e in s:
                a, b = self._ends[e]
                d += 2 if a == b else 1
        return d

    def components(self, s: Iterable[int] | None = None) -> list[set[int]]:
        """Connected components of the subgraph formed by edge set ``s``.

        Only endpoints of edges in ``s`` are included, so ``s = set()`` gives
        an empty partition. With ``s`` omitted every vertex (isolated ones
        included) is covered.
        """
        parent: dict[int, int] = {}

        def find(a: int) -> int:
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        if s is None:
            for v in self._inc:
                parent[v] = v
            s = self._ends
        for e in s:
            a, b = self.endpoints(e)
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        groups: dict[int, set[int]] = {}
        for v in parent:
            groups.setdefault(find(v), set()).add(v)
        return sorted(groups.values(), key=min)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def edge_items(self) -> Iterator[tuple[int, tuple[int, int]]]:
        """``(edge id, (u, v))`` pairs in id order."""
        for e in sorted(self._ends):
            yield e, self._ends[e]

    def signature(self) -> tuple[tuple[int, ...], tuple[tuple[int, int, int], ...]]:
        """Hashable summary: vertex ids and ``(edge, min end, max end)`` triples."""
        return (
            tuple(sorted(self._inc)),
            tuple((e, min(ab), max(ab)) for e, ab in self.edge_items()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.signature() == other.signature()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.number_of_vertices()}, m={self.number_of_edges()})"
