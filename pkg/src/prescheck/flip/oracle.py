"""Type oracles: vertex classifiers standing in for (q,d)-types."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..graph import LabeledStructure, bits, canonical_form
from .ef import MAX_BALL, _as_structure, mso_type, rooted_ball


@dataclass
class TypeOracle:
    name: str
    q: int
    d: int
    fn: Callable
    headroom: int = 0
    seen: set = field(default_factory=set)

    def type_of(self, S, v: int):
        t = self.fn(_as_structure(S), v)
        self.seen.add(t)
        return t

    def assign(self, S) -> list:
        S = _as_structure(S)
        return [self.type_of(S, v) for v in S.graph.vertices]

    @property
    def p(self) -> int:
        """Observed distinct types plus declared headroom."""
        return len(self.seen) + self.headroom


def _signature(S: LabeledStructure, v: int, d: int):
    B, root = rooted_ball(S, v, d)
    parts = B.parts.part_of if B.parts is not None else (0,) * B.order
    if B.order <= MAX_BALL:
        colors = [(int(w == root), parts[w]) for w in B.graph.vertices]
        return ("canon", canonical_form(B.graph, colors))
    # layer-by-layer sorted degree profile inside the ball
    layers = []
    seen = frontier = 1 << root
    for _ in range(d + 1):
        layers.append(tuple(sorted((B.graph.degree(w), parts[w]) for w in bits(frontier))))
        nxt = 0
        for w in bits(frontier):
            nxt |= B.graph.adj[w]
        frontier = nxt & ~seen
        seen |= nxt
    return ("profile", parts[root], tuple(layers))


def signature_type_oracle(q: int, d: int, headroom: int = 0) -> TypeOracle:
    return TypeOracle("signature", q, d, lambda S, v: _signature(S, v, d), headroom)


def exact_type_oracle(q: int, d: int, headroom: int = 0) -> TypeOracle:
    """Hintikka types from the MSO game; only for balls of at most 10 vertices and q <= 2."""
    return TypeOracle("exact", q, d, lambda S, v: ("mso", mso_type(S, v, q, d)), headroom)
