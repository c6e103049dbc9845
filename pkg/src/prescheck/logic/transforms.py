"""Syntactic transformations: relativisation, flip translation, diagrams."""

from __future__ import annotations

from itertools import combinations

from ..graph import Flip, Graph
from .syntax import (
    ATOMS, And, Dist, Edge, Eq, Exists, Forall, Formula, Implies, InSet, Not, Part, Var, Xor, children,
    conj, disj, exists_many, free_vars, part_indices, rebuild, rename_bound,
)


class TransformError(ValueError):
    pass


def relativize(psi: Formula, center: str, r: int, set_param: str | None = None) -> Formula:
    """Guard every quantifier of ``psi`` by ``dist(center, .) <= r``.

    With ``set_param`` the guard also requires membership in that vertex-set
    parameter. Bound variables named like ``center`` are renamed first.
    """
    if center in _bound_names(psi):
        psi = rename_bound(psi, {center})
    return _rel(psi, Var(center), r, set_param)


def relativize_to_set(xi: Formula, center: str, r: int, set_param: str) -> Formula:
    return relativize(xi, center, r, set_param)


def _bound_names(f: Formula) -> set[str]:
    out = {f.var} if isinstance(f, (Exists, Forall)) else set()
    for c in children(f):
        out |= _bound_names(c)
    return out


def _rel(f: Formula, c: Var, r: int, set_param: str | None) -> Formula:
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, (Exists, Forall)):
        guard: Formula = Dist(c, Var(f.var), r)
        if set_param is not None:
            guard = And((guard, InSet(Var(f.var), set_param)))
        body = _rel(f.body, c, r, set_param)
        if isinstance(f, Exists):
            return Exists(f.var, And((guard, body)))
        return Forall(f.var, Implies(guard, body))
    return rebuild(f, tuple(_rel(k, c, r, set_param) for k in children(f)))


def flip_edge_formula(x, y, F: Flip, literal: bool = False) -> Formula:
    """``E(x,y)`` XOR-ed with ``P_i(x) and P_j(y)`` for each pair of ``F`` in sorted order.

    A diagonal pair makes the bare chain true on ``x = y`` although flips never
    add loops, so unless ``literal`` is set the chain is then conjoined with ``x != y``.
    """
    out: Formula = Edge(x, y)
    for i, j in F.sorted_pairs():
        out = Xor(out, And((Part(i + 1, x), Part(j + 1, y))))
    if not literal and any(i == j for i, j in F.pairs):
        out = And((out, Not(Eq(x, y))))
    return out


def translate_flip(phi: Formula, k: int, F: Flip, literal: bool = False) -> Formula:
    """Replace every edge atom by its flipped version over ``k`` part predicates."""
    if F.k != k:
        raise TransformError(f"flip is over [{F.k}]^2 but k = {k}")
    if part_indices(phi):
        raise TransformError("formula already contains part predicates")
    return _tr(phi, F, literal)


def _tr(f: Formula, F: Flip, literal: bool) -> Formula:
    if isinstance(f, Edge):
        return flip_edge_formula(f.left, f.right, F, literal)
    if isinstance(f, ATOMS):
        return f
    return rebuild(f, tuple(_tr(c, F, literal) for c in children(f)))


def diagram(G: Graph, names: list[str] | None = None) -> tuple[list[str], Formula]:
    """Quantifier-free induced diagram of ``G`` over one variable per vertex."""
    names = names or [f"x{i}" for i in range(G.order)]
    parts: list[Formula] = []
    for u, v in combinations(range(G.order), 2):
        parts.append(Not(Eq(Var(names[u]), Var(names[v]))))
    for u, v in combinations(range(G.order), 2):
        e = Edge(Var(names[u]), Var(names[v]))
        parts.append(e if G.has_edge(u, v) else Not(e))
    return names, conj(*parts)


def existential_from_models(models: list[Graph]) -> Formula:
    """Disjunction of the existential closures of the models' induced diagrams."""
    if not models:
        raise TransformError("need at least one model")
    disjuncts = []
    for M in models:
        names, body = diagram(M)
        disjuncts.append(exists_many(names, body))
    return disj(*disjuncts)


def is_existential(f: Formula) -> bool:
    """Prenex-free check: no universal quantifier under an even number of negations
    and no existential under an odd number."""
    return _exist_ok(f, True)


def _exist_ok(f: Formula, positive: bool) -> bool:
    if isinstance(f, ATOMS):
        return True
    if isinstance(f, Not):
        return _exist_ok(f.body, not positive)
    if isinstance(f, Exists):
        return positive and _exist_ok(f.body, positive)
    if isinstance(f, Forall):
        return (not positive) and _exist_ok(f.body, positive)
    if isinstance(f, Xor):
        return not _has_quantifier(f)
    if isinstance(f, Implies):
        return _exist_ok(f.left, not positive) and _exist_ok(f.right, positive)
    return all(_exist_ok(c, positive) for c in children(f))


def _has_quantifier(f: Formula) -> bool:
    return isinstance(f, (Exists, Forall)) or any(_has_quantifier(c) for c in children(f))


def check_free(f: Formula, allowed: set[str]) -> None:
    extra = free_vars(f) - allowed
    if extra:
        raise TransformError(f"unexpected free variables {sorted(extra)}")
