import pytest

from conftest import disconnects, k5, nx_lambda
from eitrees.connectivity import is_4_edge_connected
from eitrees.errors import GraphError, NotFourEdgeConnected
from eitrees.mader import (
    AddEdge,
    MaderSequence,
    Pinch,
    _pairings,
    apply_op,
    base_graph,
    extract_sequence,
    find_deletable_edge,
    format_sequence,
    parse_sequence,
    random_4ec,
    replay,
    split_off,
)
from eitrees.multigraph import MultiGraph


def test_base_graph():
    g, seq = base_graph(0)
    assert g.vertices == [0, 1]
    assert [sorted(g.endpoints(e)) for e in g.edges] == [[0, 1]] * 4
    assert nx_lambda(g) == 4
    assert replay(seq) == g


def test_pinch_parallel_pair():
    g, _ = base_graph()
    apply_op(g, Pinch(0, 1, 2, 4, 5, 6, 7))
    assert g.vertices == [0, 1, 2]
    nbr = sorted(g.other_end(e, 2) for e in g.incident(2))
    assert nbr == [0, 0, 1, 1]
    assert is_4_edge_connected(g)


def test_add_loop_at_root():
    g, _ = base_graph()
    apply_op(g, AddEdge(0, 0, 4))
    assert g.is_loop(4)
    assert g.degree(0) == 6


def test_bad_pinches():
    g, _ = base_graph()
    with pytest.raises(GraphError):
        apply_op(g, Pinch(0, 0, 2, 4, 5, 6, 7))
    with pytest.raises(GraphError):
        apply_op(g, Pinch(0, 9, 2, 4, 5, 6, 7))
    with pytest.raises(GraphError):
        apply_op(g, Pinch(0, 1, 1, 4, 5, 6, 7))
    with pytest.raises(GraphError):
        apply_op(g, Pinch(0, 1, 2, 3, 5, 6, 7))


def test_find_deletable():
    g, _ = base_graph()
    assert find_deletable_edge(g) is None
    g.add_edge(0, 1)
    e = find_deletable_edge(g)
    assert e is not None
    for f in g.edges:
        h = g.copy()
        h.delete_edge(f)
        assert nx_lambda(h) == 4
    h, _ = base_graph()
    h.add_edge(1, 1)
    assert find_deletable_edge(h) == 4


@pytest.mark.parametrize("seed", range(1, 25))
def test_deletable_matches_oracle(seed):
    g, _ = random_4ec(seed, 18, pinch_bias=0.5)
    for e in g.edges:
        h = g.copy()
        h.delete_edge(e)
        expect = is_4_edge_connected(h)
        stuck: set[int] = set()
        first = find_deletable_edge(g, stuck)
        if expect and (first is None or first > e):
            pytest.fail(f"edge {e} is deletable but was skipped")
        if e in stuck:
            assert not expect


def _oracle_pairing(g, v):
    inc = g.incident(v)
    nbr = {e: g.other_end(e, v) for e in inc}
    for p, q in _pairings(inc):
        h = g.copy()
        for e in inc:
            h.delete_edge(e)
        h.remove_isolated_vertex(v)
        h.add_edge(nbr[p[0]], nbr[p[1]])
        h.add_edge(nbr[q[0]], nbr[q[1]])
        if nx_lambda(h) >= 4:
            return {frozenset(p), frozenset(q)}
    return None


@pytest.mark.parametrize("seed", range(1, 25))
def test_split_matches_oracle(seed):
    g, _ = random_4ec(seed, 16)
    for v in g.vertices:
        if v == 0 or g.degree(v) != 4 or any(g.is_loop(e) for e in g.incident(v)):
            continue
        op, h = split_off(g, v, 0)
        expect = _oracle_pairing(g, v)
        assert expect is not None
        assert {frozenset((op.ex, op.ey)), frozenset((op.ez, op.ew))} == expect
        assert is_4_edge_connected(h)
        assert not h.has_vertex(v)
        # the returned pinch undoes the split exactly
        back = h.copy()
        apply_op(back, op)
        assert back == g


def test_split_pinched_base_recovers_base():
    g, _ = base_graph()
    apply_op(g, Pinch(0, 1, 2, 4, 5, 6, 7))
    op, h = split_off(g, 2, 0)
    assert h.vertices == [0, 1]
    assert sorted(tuple(sorted(ab)) for _, ab in h.edge_items()) == [(0, 1)] * 4


def test_split_root_rejected():
    g, _ = base_graph()
    apply_op(g, Pinch(0, 1, 2, 4, 5, 6, 7))
    with pytest.raises(ValueError):
        split_off(g, 0, 0)


def test_extract_base_and_one_add():
    g, _ = base_graph()
    assert extract_sequence(g, 0).ops == []
    g.add_edge(0, 1)
    seq = extract_sequence(g, 0)
    assert len(seq.ops) == 1 and isinstance(seq.ops[0], AddEdge)
    assert replay(seq) == g


def test_extract_k5():
    g = k5()
    seq = extract_sequence(g, 0, check=True)
    assert replay(seq) == g


@pytest.mark.parametrize("seed", range(1, 40))
def test_round_trip(seed):
    g, seq = random_4ec(seed, seed % 30)
    assert replay(seq) == g
    assert nx_lambda(g) >= 4
    ext = extract_sequence(g, 0, check=seed < 10)
    assert replay(ext) == g


def test_random_determinism():
    assert random_4ec(5, 20)[0] == random_4ec(5, 20)[0]
    assert random_4ec(5, 0)[0] == base_graph()[0]
    with pytest.raises(ValueError):
        random_4ec(1, -1)


@pytest.mark.parametrize(
    "edges",
    [
        [(0, 1), (1, 2), (2, 0)],
        [(0, 1)] * 3,
        [(0, 1)] * 4 + [(1, 2)] * 2 + [(2, 0)] * 1,
    ],
)
def test_extract_rejects_with_witness(edges):
    g = MultiGraph.from_edges(3 if max(max(e) for e in edges) == 2 else 2, edges)
    with pytest.raises(NotFourEdgeConnected) as info:
        extract_sequence(g, 0)
    assert info.value.value < 4
    assert len(info.value.cut) == info.value.value
    assert disconnects(g, info.value.cut)


def test_sequence_text_round_trip():
    _, seq = random_4ec(11, 25)
    text = format_sequence(seq)
    back = parse_sequence(text)
    assert back == seq
    assert format_sequence(back) == text


@pytest.mark.parametrize("text", ["", "add 0 1 -> 4\n", "base 0 1 0 1 2\n", "base 0 1 0 1 2 3\nfoo 1\n"])
def test_sequence_parse_errors(text):
    with pytest.raises(ValueError):
        parse_sequence(text)


def test_sequence_dataclass_equality():
    assert MaderSequence(0, 1, (0, 1, 2, 3)) == MaderSequence(0, 1, (0, 1, 2, 3), [])
