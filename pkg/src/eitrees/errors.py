"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Raised for references to vertices or edges a graph does not have."""


class NotFourEdgeConnected(ValueError):
    """The input graph has an edge cut with fewer than four edges.

    ``cut`` is a witness: deleting its edges disconnects the graph.
    """

    def __init__(self, value: int, cut: frozenset[int]):
        self.value = value
        self.cut = cut
        super().__init__(
            f"graph is not 4-edge-connected: lambda={value}, cut={sorted(cut)}"
        )


class InvariantError(RuntimeError):
    """An internal invariant failed. This always indicates a bug.

    ``step`` is the index of the construction op being processed (if any) and
    ``rule`` names the construction rule that was being applied.
    """

    def __init__(self, message: str, *, step: int | None = None, rule: str | None = None):
        self.message = message
        self.step = step
        self.rule = rule
        parts = [message]
        if rule is not None:
            parts.append(f"rule={rule}")
        if step is not None:
            parts.append(f"op={step}")
        super().__init__(" ".join(parts))


class SplitOffError(InvariantError):
    """No pairing at a degree-4 vertex kept the graph 4-edge-connected."""
