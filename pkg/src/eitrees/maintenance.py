"""Carry a chain decomposition through Mader operations.

Starting from the two-chain decomposition of the base graph, each added
edge becomes a one-way chain, and each pinch rewrites the (one or two)
chains holding the pinched edges, sometimes inserting chains near a third
index. Every branch taken is recorded by label in an optional ``trace``
list so tests can check coverage; :data:`ALL_BRANCHES` lists the labels.

Symmetric cases are handled by running the rule on the reversed
decomposition and mapping the resulting edit plan back.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .chains import (
    Chain,
    ChainDecomposition,
    Kind,
    base_decomposition,
    is_minimal,
    minimality_violations,
    minimalize,
    validate,
)
from .errors import InvariantError
from .mader import AddEdge, MaderSequence, Pinch, apply_op, base_graph
from .multigraph import MultiGraph

__all__ = [
    "PinchContext",
    "pinch_context",
    "maintain_add_edge",
    "maintain_pinch",
    "build_chain_decomposition",
    "ALL_BRANCHES",
]

# every branch label maintenance can emit
ALL_BRANCHES = (
    "add.root",
    "add.nonroot",
    "same_chain",
    "head_free.up",
    "head_free.down",
    "head_free.oneway",
    "tail_free.up",
    "tail_free.down",
    "tail_free.oneway",
    "split.up",
    "split.down",
    "split.oneway_anchored",
    "split.extend_up",
    "split.after_arc",
    "shared_arc",
    "crossed",
)


class _Side(NamedTuple):
    """A pinched edge ``e`` with ends ``a``, ``b`` and its replacements.

    ``ea`` is the new edge joining the pinch vertex to ``a``.
    """

    e: int
    a: int
    b: int
    ea: int
    eb: int

    def swapped(self) -> _Side:
        return _Side(self.e, self.b, self.a, self.eb, self.ea)


class _Path(NamedTuple):
    """Sub-walk of a chain, starting at a named vertex."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def rev(self) -> _Path:
        return _Path(self.vertices[::-1], self.edges[::-1])


@dataclass
class _Plan:
    replace: dict[int, list[Chain]] = field(default_factory=dict)
    before: dict[int, list[Chain]] = field(default_factory=dict)
    after: dict[int, list[Chain]] = field(default_factory=dict)
    labels: list[str] = field(default_factory=list)

    def mirrored(self, last: int) -> _Plan:
        """Map a plan made on the reversed decomposition back."""

        def flip(chs: list[Chain]) -> list[Chain]:
            return [c.flipped() for c in reversed(chs)]

        return _Plan(
            {last - k: flip(v) for k, v in self.replace.items()},
            {last - k: flip(v) for k, v in self.after.items()},
            {last - k: flip(v) for k, v in self.before.items()},
            list(self.labels),
        )

    def merged(self, other: _Plan) -> _Plan:
        clash = self.replace.keys() & other.replace.keys()
        if clash:
            raise InvariantError(f"edit plans both replace chains {sorted(clash)}")
        out = _Plan(dict(self.replace), {}, {}, self.labels + other.labels)
        out.replace.update(other.replace)
        for mine, theirs, dst in ((self.before, other.before, out.before), (self.after, other.after, out.after)):
            for k in mine.keys() | theirs.keys():
                dst[k] = mine.get(k, []) + theirs.get(k, [])
        return out

    def apply(self, d: ChainDecomposition) -> ChainDecomposition:
        out: list[Chain] = []
        for k, c in enumerate(d.chains):
            out.extend(self.before.get(k, []))
            out.extend(self.replace.get(k, [c]))
            out.extend(self.after.get(k, []))
        return ChainDecomposition(d.root, out)


@dataclass
class PinchContext:
    """Normalized view of a pinch against the pre-pinch decomposition.

    After normalization ``J1 <= J2`` (chain indices of ``e1``, ``e2``), and a
    one-way ``J1`` (``J2``) is oriented with ``x`` (``z``) as its tail. ``i``
    is the first chain strictly between ``J1`` and ``J2`` that meets ``y``,
    defined only when ``J1`` is one-way and ``y`` (not the root) is absent
    from chains before ``J1``; ``j`` is the mirror notion for ``z``.
    """

    e1: int
    e2: int
    v: int
    x: int
    y: int
    z: int
    w: int
    ex: int
    ey: int
    ez: int
    ew: int
    J1: int
    J2: int
    i: int | None
    j: int | None
    rule: str

    @property
    def side1(self) -> _Side:
        return _Side(self.e1, self.x, self.y, self.ex, self.ey)

    @property
    def side2(self) -> _Side:
        return _Side(self.e2, self.z, self.w, self.ez, self.ew)


def _split(c: Chain, s: _Side) -> tuple[_Path, _Path]:
    """Sub-walks from ``s.a`` and from ``s.b`` to the ends, avoiding ``s.e``."""
    t = c.position(s.e)
    lower = _Path(c.vertices[: t + 1][::-1], c.edges[:t][::-1])  # from vertices[t] back
    upper = _Path(c.vertices[t + 1:], c.edges[t + 1:])  # from vertices[t+1] on
    if c.vertices[t] == s.a:
        return lower, upper
    return upper, lower


def _to_v(p: _Path, e: int, v: int, kind: Kind) -> Chain:
    """Chain walking ``p`` from its far end back to its start, then ``e`` to ``v``."""
    q = p.rev()
    return Chain(kind, q.vertices + (v,), q.edges + (e,))


def _path_chain(p: _Path, kind: Kind) -> list[Chain]:
    return [Chain(kind, p.vertices, p.edges)] if p.edges else []


def _oriented(d: ChainDecomposition, k: int, s: _Side) -> _Side:
    c = d.chains[k]
    if c.kind is Kind.ONEWAY and s.a != c.tail:
        return s.swapped()
    return s


# -- both pinched edges in one chain ----------------------------------------

def _same_chain(d: ChainDecomposition, k: int, s1: _Side, s2: _Side, v: int) -> _Plan:
    c = d.chains[k]
    if c.kind is not Kind.UP:
        raise InvariantError("expected an up chain", rule="same_chain")
    t1, t2 = c.position(s1.e), c.position(s2.e)
    if t1 > t2:
        s1, s2, t1, t2 = s2, s1, t2, t1
    if s1.a != c.vertices[t1]:
        s1 = s1.swapped()
    if s2.a != c.vertices[t2]:
        s2 = s2.swapped()
    x, y, z = c.vertices[t1], c.vertices[t1 + 1], c.vertices[t2]
    outer = Chain(
        Kind.UP,
        c.vertices[: t1 + 1] + (v,) + c.vertices[t2 + 1:],
        c.edges[:t1] + (s1.ea, s2.eb) + c.edges[t2 + 1:],
    )
    new = [outer, Chain.oneway(v, y, s1.eb), Chain.oneway(v, z, s2.ea)]
    middle = _Path(c.vertices[t1 + 1: t2 + 1], c.edges[t1 + 1: t2])
    new += _path_chain(middle, Kind.UP)
    assert x == s1.a
    return _Plan(replace={k: new}, labels=["same_chain"])


# -- a one-way J1 whose head is otherwise unused before J2 ----------------

def _head_free(d: ChainDecomposition, c1: int, c2: int, s1: _Side, s2: _Side, v: int, tag: str) -> _Plan:
    r = d.root
    x, y = s1.a, s1.b
    first = [Chain.oneway(x, v, s1.ea)]
    J2 = d.chains[c2]
    if J2.kind is Kind.UP:
        pz, pw = _split(J2, s2)
        if pz.vertices[-1] == y and y != r:
            s2 = s2.swapped()
            pz, pw = pw, pz
            if pz.vertices[-1] == y:
                raise InvariantError("closed up chain ends at the one-way head", rule=f"{tag}.up")
        new = [_to_v(pz, s2.ea, v, Kind.UP), Chain.oneway(v, y, s1.eb), Chain.oneway(v, s2.b, s2.eb)]
        new += _path_chain(pw, Kind.UP)
        case = "up"
    elif J2.kind is Kind.DOWN:
        pz, pw = _split(J2, s2)
        new = _path_chain(pw, Kind.DOWN)
        new += [
            Chain.oneway(s2.b, v, s2.eb),
            _to_v(pz, s2.ea, v, Kind.DOWN),
            Chain.oneway(v, y, s1.eb),
        ]
        case = "down"
    else:
        z, w = s2.a, s2.b
        new = [Chain.oneway(z, v, s2.ea), Chain.oneway(v, w, s2.eb), Chain.oneway(v, y, s1.eb)]
        case = "oneway"
    return _Plan(replace={c1: first, c2: new}, labels=[f"{tag}.{case}"])


# -- rewrite J1 (and, mirrored, J2) independently --------------------------

def _rewrite_first(d: ChainDecomposition, c1: int, s1: _Side, i: int | None, v: int, tag: str) -> _Plan:
    r = d.root
    J1 = d.chains[c1]
    x, y = s1.a, s1.b
    if J1.kind is Kind.UP:
        px, py = _split(J1, s1)
        q = px.rev()
        walk = Chain(Kind.UP, q.vertices + (v,) + py.vertices, q.edges + (s1.ea, s1.eb) + py.edges)
        return _Plan(replace={c1: [walk]}, labels=[f"{tag}.up"])
    if J1.kind is Kind.DOWN:
        px, py = _split(J1, s1)
        new = _path_chain(px, Kind.DOWN) + _path_chain(py, Kind.DOWN)
        new += [Chain.oneway(x, v, s1.ea), Chain.oneway(y, v, s1.eb)]
        return _Plan(replace={c1: new}, labels=[f"{tag}.down"])
    if i is None:
        if not (y == r or d.deg_before(y, c1) >= 1):
            raise InvariantError("one-way head unplaced but no later chain index", rule=f"{tag}.oneway_anchored")
        new = [Chain.oneway(x, v, s1.ea), Chain(Kind.UP, (v, y), (s1.eb,))]
        return _Plan(replace={c1: new}, labels=[f"{tag}.oneway_anchored"])
    Gi = d.chains[i]
    plan = _Plan(replace={c1: [Chain.oneway(x, v, s1.ea)]})
    if Gi.kind is Kind.UP and not Gi.closed and y in Gi.ends:
        if Gi.vertices[-1] == y:
            ext = Chain(Kind.UP, Gi.vertices + (v,), Gi.edges + (s1.eb,))
        else:
            ext = Chain(Kind.UP, (v,) + Gi.vertices, (s1.eb,) + Gi.edges)
        plan.replace[i] = [ext]
        plan.labels.append(f"{tag}.extend_up")
    elif Gi.kind is Kind.ONEWAY and Gi.head == y and Gi.tail != y:
        plan.after[i] = [Chain(Kind.UP, (y, v), (s1.eb,))]
        plan.labels.append(f"{tag}.after_arc")
    else:
        raise InvariantError(f"chain {i} meets {y} in an unexpected way", rule=f"{tag}.forward")
    return plan


def _first_between(d: ChainDecomposition, v: int, lo: int, hi: int) -> int | None:
    for k in d.incidences(v):
        if lo < k < hi:
            return k
    return None


def pinch_context(d: ChainDecomposition, g: MultiGraph, op: Pinch) -> PinchContext:
    """Read the pinch against ``d`` (pre-pinch) and ``g`` (post-pinch)."""
    v = op.new_vertex
    try:
        c1, c2 = d.ci[op.e1], d.ci[op.e2]
    except KeyError as exc:
        raise InvariantError(f"pinched edge {exc.args[0]} not in decomposition") from None
    ends = [g.other_end(e, v) for e in op.new_edges]
    s1 = _Side(op.e1, ends[0], ends[1], op.ex, op.ey)
    s2 = _Side(op.e2, ends[2], ends[3], op.ez, op.ew)
    for s, k in ((s1, c1), (s2, c2)):
        chain = d.chains[k]
        if sorted(chain.edge_ends(chain.position(s.e))) != sorted((s.a, s.b)):
            raise InvariantError(f"pinched edge {s.e} ends disagree with its chain")
    i = j = None
    if c1 == c2:
        rule = "same_chain"
    else:
        if c1 > c2:
            s1, s2, c1, c2 = s2, s1, c2, c1
        s1, s2 = _oriented(d, c1, s1), _oriented(d, c2, s2)
        r = d.root
        one1 = d.chains[c1].kind is Kind.ONEWAY
        one2 = d.chains[c2].kind is Kind.ONEWAY
        if one1 and d.deg_before(s1.b, c2) == 1:
            rule = "head_free"
        elif one2 and d.deg_after(s2.a, c1) == 1:
            rule = "tail_free"
        else:
            if one1 and s1.b != r and d.deg_before(s1.b, c1) == 0:
                i = _first_between(d, s1.b, c1, c2)
                if i is None:
                    raise InvariantError(f"no chain between {c1} and {c2} meets {s1.b}")
            if one2 and s2.a != r and d.deg_after(s2.a, c2) == 0:
                cands = [k for k in d.incidences(s2.a) if c1 < k < c2]
                if not cands:
                    raise InvariantError(f"no chain between {c1} and {c2} meets {s2.a}")
                j = cands[-1]
            guards = {
                "split": i is None or j is None or i < j,
                "shared_arc": i is not None and j is not None and i == j,
                "crossed": i is not None and j is not None and i > j,
            }
            hits = [name for name, hit in guards.items() if hit]
            if len(hits) != 1:
                raise InvariantError(f"pinch dispatch matched {hits}")
            rule = hits[0]
    return PinchContext(
        s1.e, s2.e, v, s1.a, s1.b, s2.a, s2.b, s1.ea, s1.eb, s2.ea, s2.eb, c1, c2, i, j, rule
    )


def _pinch_plan(d: ChainDecomposition, ctx: PinchContext) -> _Plan:
    last = len(d.chains) - 1
    v = ctx.v
    s1, s2 = ctx.side1, ctx.side2
    c1, c2 = ctx.J1, ctx.J2
    if ctx.rule == "same_chain":
        if d.chains[c1].kind is Kind.DOWN:
            return _same_chain(d.reversed(), last - c1, s1, s2, v).mirrored(last)
        return _same_chain(d, c1, s1, s2, v)
    if ctx.rule == "head_free":
        return _head_free(d, c1, c2, s1, s2, v, "head_free")
    # in the reversed decomposition J2 comes first and its tail is w
    rs1 = s2.swapped() if d.chains[c2].kind is Kind.ONEWAY else s2
    rs2 = s1.swapped() if d.chains[c1].kind is Kind.ONEWAY else s1
    if ctx.rule == "tail_free":
        return _head_free(d.reversed(), last - c2, last - c1, rs1, rs2, v, "tail_free").mirrored(last)
    if ctx.rule == "split":
        p1 = _rewrite_first(d, c1, s1, ctx.i, v, "split")
        rj = None if ctx.j is None else last - ctx.j
        p2 = _rewrite_first(d.reversed(), last - c2, rs1, rj, v, "split").mirrored(last)
        return p1.merged(p2)
    x, y, z, w = ctx.x, ctx.y, ctx.z, ctx.w
    ex = Chain.oneway(x, v, ctx.ex)
    ez = Chain.oneway(z, v, ctx.ez)
    ey = Chain.oneway(v, y, ctx.ey)
    ew = Chain.oneway(v, w, ctx.ew)
    assert ctx.i is not None and ctx.j is not None
    if ctx.rule == "shared_arc":
        Gi = d.chains[ctx.i]
        if not (Gi.kind is Kind.ONEWAY and Gi.tail == z and Gi.head == y):
            raise InvariantError("expected a one-way chain from z to y", rule="shared_arc")
        return _Plan(
            replace={c1: [], c2: []},
            before={ctx.i: [ex, ez]},
            after={ctx.i: [ey, ew]},
            labels=["shared_arc"],
        )
    return _Plan(
        replace={c1: [ex], c2: [ew]},
        before={ctx.i: [ey]},
        after={ctx.j: [ez]},
        labels=["crossed"],
    )


def maintain_pinch(
    g: MultiGraph, d: ChainDecomposition, op: Pinch, trace: list[str] | None = None
) -> ChainDecomposition:
    """Decomposition of the post-pinch graph ``g`` from the pre-pinch ``d``.

    ``d`` must be valid and minimal. The result is valid but not necessarily
    minimal; the branch label taken is appended to ``trace``.
    """
    if op.e1 == op.e2:
        raise InvariantError("pinch of a single edge")
    ctx = pinch_context(d, g, op)
    try:
        plan = _pinch_plan(d, ctx)
        out = plan.apply(d)
    except InvariantError as exc:
        raise InvariantError(exc.message, rule=exc.rule or ctx.rule) from exc
    except ValueError as exc:
        raise InvariantError(f"rebuilt chains are malformed: {exc}", rule=ctx.rule) from exc
    label = "+".join(plan.labels)
    rep = validate(g, out)
    if not rep.ok:
        raise InvariantError(f"pinch result invalid: {rep}", rule=label)
    if trace is not None:
        trace.extend(plan.labels)
    return out


def maintain_add_edge(
    g: MultiGraph, d: ChainDecomposition, e: int, trace: list[str] | None = None
) -> ChainDecomposition:
    """Insert the new edge ``e`` (already in ``g``) as a one-way chain.

    An edge at the root goes first with the root as tail. Otherwise it goes
    just before the first chain index ``i`` at which an end has degree
    exactly two among chains ``< i``; that end becomes the tail.
    """
    r = d.root
    u, v = g.endpoints(e)
    if r in (u, v):
        tail, head = (u, v) if u == r else (v, u)
        chains = [Chain.oneway(tail, head, e)] + list(d.chains)
        if trace is not None:
            trace.append("add.root")
        return ChainDecomposition(r, chains)
    m = len(d.chains) - 1

    def first_two(a: int) -> int | None:
        # degree among chains < i is exactly 2 for inc[1] < i <= inc[2]
        inc = d.incidences(a)
        if len(inc) < 2:
            return None
        lo = inc[1] + 1
        hi = inc[2] if len(inc) > 2 else m
        return lo if lo <= min(hi, m) else None

    iu, iv = first_two(u), first_two(v)
    if iu is None and iv is None:
        raise InvariantError(f"no index where {u} or {v} has degree two", rule="add.nonroot")
    if iv is None or (iu is not None and iu <= iv):
        tail, head, i = u, v, iu
    else:
        tail, head, i = v, u, iv
    assert i is not None
    chains = list(d.chains)
    chains.insert(i, Chain.oneway(tail, head, e))
    if trace is not None:
        trace.append("add.nonroot")
    return ChainDecomposition(r, chains)


def build_chain_decomposition(
    seq: MaderSequence,
    *,
    check: bool = True,
    trace: list[str] | None = None,
    on_step: Callable[[int, MultiGraph, ChainDecomposition], None] | None = None,
) -> tuple[MultiGraph, ChainDecomposition]:
    """Replay ``seq`` while maintaining a minimal chain decomposition.

    With ``check`` the decomposition is validated (and its minimality
    confirmed) after every op. ``on_step(k, g, d)`` sees each intermediate
    state; ``g`` is mutated afterwards, so copy it to keep it.
    """
    g, _ = base_graph(seq.root, seq.partner, seq.base_edges)
    d = base_decomposition(seq.root, seq.partner, seq.base_edges)
    for k, op in enumerate(seq.ops):
        try:
            apply_op(g, op)
            if isinstance(op, AddEdge):
                d = maintain_add_edge(g, d, op.new_edge, trace)
            else:
                d = maintain_pinch(g, d, op, trace)
            d = minimalize(d)
            if check:
                rep = validate(g, d)
                if not rep.ok:
                    raise InvariantError(f"decomposition invalid after minimalize: {rep}")
                if not is_minimal(d):
                    raise InvariantError(f"minimalize left {minimality_violations(d)}")
        except InvariantError as exc:
            raise InvariantError(exc.message, step=k, rule=exc.rule) from exc
        if on_step is not None:
            on_step(k, g, d)
    return g, d
