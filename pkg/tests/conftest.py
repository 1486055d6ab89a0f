"""Shared oracles and fixtures.

The oracles here deliberately avoid the package's own flow code: small cuts
are found by brute-force enumeration and global minimum cuts by
networkx's Stoer-Wagner implementation.
"""

from __future__ import annotations

import itertools

import networkx as nx
import pytest

from eitrees.multigraph import MultiGraph


def disconnects(g: MultiGraph, cut) -> bool:
    removed = set(cut)
    parent = {v: v for v in g.vertices}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e, (a, b) in g.edge_items():
        if e not in removed:
            parent[find(a)] = find(b)
    return len({find(v) for v in g.vertices}) > 1


def brute_lambda(g: MultiGraph, cap: int = 4) -> int:
    """Smallest disconnecting edge set size, capped at ``cap`` (exhaustive)."""
    plain = [e for e in g.edges if not g.is_loop(e)]
    for k in range(cap):
        for cut in itertools.combinations(plain, k):
            if disconnects(g, cut):
                return k
    return cap


def brute_local(g: MultiGraph, s: int, t: int, cap: int = 5) -> int:
    """Smallest s-t separating edge set size, capped (exhaustive)."""
    plain = [e for e in g.edges if not g.is_loop(e)]
    for k in range(cap):
        for cut in itertools.combinations(plain, k):
            removed = set(cut)
            seen = {s}
            stack = [s]
            while stack:
                a = stack.pop()
                for e in g.incident(a):
                    if e in removed:
                        continue
                    b = g.other_end(e, a)
                    if b not in seen:
                        seen.add(b)
                        stack.append(b)
            if t not in seen:
                return k
    return cap


def nx_lambda(g: MultiGraph) -> int:
    """Global edge connectivity via Stoer-Wagner on multiplicity weights."""
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    for _, (a, b) in g.edge_items():
        if a == b:
            continue
        w = h.get_edge_data(a, b, {"weight": 0})["weight"]
        h.add_edge(a, b, weight=w + 1)
    if g.number_of_vertices() < 2:
        raise ValueError("need two vertices")
    if not nx.is_connected(h):
        return 0
    value, _ = nx.stoer_wagner(h)
    return value


def k5() -> MultiGraph:
    return MultiGraph.from_edges(5, itertools.combinations(range(5), 2))


@pytest.fixture
def k5_graph() -> MultiGraph:
    return k5()


# criterion number -> (passed, detail); filled in by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
