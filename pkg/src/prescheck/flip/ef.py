"""MSO Ehrenfeucht-Fraisse games on rooted neighbourhoods of tiny graphs."""

from __future__ import annotations

from functools import lru_cache

from ..graph import Graph, LabeledStructure, ball, induced_structure

MAX_BALL = 10
MAX_ROUNDS = 2


class GuardExceeded(ValueError):
    pass


def _as_structure(S) -> LabeledStructure:
    return S if isinstance(S, LabeledStructure) else LabeledStructure(S)


def rooted_ball(S, v: int, d: int) -> tuple[LabeledStructure, int]:
    S = _as_structure(S)
    sub, remap = induced_structure(S, ball(S.graph, v, d))
    return sub, remap[v]


class _Game:
    """Hintikka types of positions (points, sets) in one small structure."""

    def __init__(self, S: LabeledStructure):
        self.G: Graph = S.graph
        self.parts = S.parts.part_of if S.parts is not None else (0,) * S.graph.order
        n = self.G.order
        self.all_sets = range(1 << n)
        self.type = lru_cache(maxsize=None)(self._type)

    def atomic(self, points: tuple, sets: tuple) -> tuple:
        G = self.G
        eq = tuple(p == q for i, p in enumerate(points) for q in points[i + 1:])
        edge = tuple(G.has_edge(p, q) for i, p in enumerate(points) for q in points[i + 1:])
        lab = tuple(self.parts[p] for p in points)
        mem = tuple(tuple(bool(X >> p & 1) for X in sets) for p in points)
        return eq, edge, lab, mem

    def _type(self, points: tuple, sets: tuple, k: int):
        atom = self.atomic(points, sets)
        if k == 0:
            return atom
        pts = frozenset(self.type(points + (v,), sets, k - 1) for v in self.G.vertices)
        if k == 1:
            # a set chosen in the last round only constrains memberships of
            # existing points, which a matching set on the other side copies
            return atom, pts, frozenset()
        st = frozenset(self.type(points, sets + (X,), k - 1) for X in self.all_sets)
        return atom, pts, st


def mso_type(S, v: int, q: int, d: int):
    """Rank-q MSO Hintikka type of the root in its d-ball."""
    if q > MAX_ROUNDS:
        raise GuardExceeded(f"at most {MAX_ROUNDS} rounds supported")
    B, root = rooted_ball(S, v, d)
    if B.order > MAX_BALL:
        raise GuardExceeded(f"ball of {B.order} vertices exceeds {MAX_BALL}")
    return _Game(B).type((root,), (), q)


def mso_ef_equivalent(A, a: int, B, b: int, q: int, d: int) -> bool:
    """Duplicator wins the q-round MSO game on the rooted d-balls."""
    return mso_type(A, a, q, d) == mso_type(B, b, q, d)
