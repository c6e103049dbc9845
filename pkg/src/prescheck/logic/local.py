"""Basic local sentences and their direct evaluation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ..graph import LabeledStructure, bits, induced_structure
from .evaluate import Evaluator, _as_structure
from .syntax import Dist, Formula, Not, Var, conj, exists_many, free_vars, substitute
from .transforms import relativize


@dataclass(frozen=True)
class BasicLocalSentence:
    """``exists x1..xn`` pairwise at distance ``> 2r``, each satisfying ``psi`` in its r-ball."""

    width: int
    radius: int
    condition: Formula
    var: str = "x"

    def __post_init__(self):
        extra = free_vars(self.condition) - {self.var}
        if extra:
            raise ValueError(f"local condition has extra free variables {sorted(extra)}")

    def to_formula(self) -> Formula:
        names = [f"w{i}" for i in range(1, self.width + 1)]
        parts: list[Formula] = []
        for a, b in combinations(names, 2):
            parts.append(Not(Dist(Var(a), Var(b), 2 * self.radius)))
        local = relativize(self.condition, self.var, self.radius)
        for name in names:
            parts.append(substitute(local, {self.var: Var(name)}))
        return exists_many(names, conj(*parts))


def local_satisfiers(S, b: BasicLocalSentence) -> list[int]:
    """Vertices whose r-ball satisfies the local condition at the centre."""
    S = _as_structure(S)
    ev = Evaluator(S)
    rel = relativize(b.condition, b.var, b.radius)
    fn = ev.compile(rel, (b.var,))
    return [v for v in S.graph.vertices if fn((v,))]


def eval_basic_local(S, b: BasicLocalSentence) -> bool:
    """Search for ``width`` satisfiers that are pairwise more than ``2r`` apart."""
    S = _as_structure(S)
    if b.width == 0:
        return True
    ev = Evaluator(S)
    cand = local_satisfiers(S, b)
    far = 2 * b.radius
    excl = {v: ev.ball_mask(v, far) for v in cand}

    def search(start: int, allowed: int, need: int) -> bool:
        if need == 0:
            return True
        for idx in range(start, len(cand)):
            v = cand[idx]
            if allowed >> v & 1 and search(idx + 1, allowed & ~excl[v], need - 1):
                return True
        return False

    full = 0
    for v in cand:
        full |= 1 << v
    return search(0, full, b.width)


def local_condition_on_ball(S, b: BasicLocalSentence, v: int) -> bool:
    """The condition evaluated on the induced r-ball around ``v`` (independent check)."""
    S = _as_structure(S)
    ev = Evaluator(S)
    sub, remap = induced_structure(LabeledStructure(S.graph, S.parts, S.constants),
                                   bits(ev.ball_mask(v, b.radius)))
    return Evaluator(sub).evaluate(b.condition, {b.var: remap[v]})
