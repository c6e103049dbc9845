"""Seeded generators and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from prescheck.graph import Flip, Graph, Partition
from prescheck.logic.syntax import (
    And, Dist, Edge, Eq, Exists, Forall, Implies, Not, Or, Part, Var, Xor,
)


ACCEPTANCE: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE.append(line)


def rand_graph(rng: random.Random, order: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < p]
    return Graph.from_edges(order, edges)


def rand_partition(rng: random.Random, order: int, k: int) -> Partition:
    return Partition(k, tuple(rng.randrange(k) for _ in range(order)))


def rand_flip(rng: random.Random, k: int) -> Flip:
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    return Flip(k, frozenset(c for c in cells if rng.random() < 0.5))


def rand_formula(rng: random.Random, free: list[str], rank: int, k: int = 0,
                 depth: int = 4, dist: bool = False):
    """Random formula whose free variables lie in ``free`` and whose rank is at most ``rank``."""
    if depth <= 0 or (free and rng.random() < 0.25):
        return _rand_atom(rng, free, k, dist)
    roll = rng.random()
    if rank > 0 and (roll < 0.35 or not free):
        name = f"y{len(free)}"
        body = rand_formula(rng, free + [name], rank - 1, k, depth - 1, dist)
        return (Exists if rng.random() < 0.5 else Forall)(name, body)
    if not free:
        return _rand_atom(rng, free, k, dist)
    a = rand_formula(rng, free, rank, k, depth - 1, dist)
    if roll < 0.5:
        return Not(a)
    b = rand_formula(rng, free, rank, k, depth - 1, dist)
    op = rng.choice([And, Or, Implies, Xor])
    return op((a, b)) if op in (And, Or) else op(a, b)


def _rand_atom(rng, free, k, dist):
    from prescheck.logic.syntax import Bottom, Top
    if not free:
        return rng.choice([Top(), Bottom()])
    x = Var(rng.choice(free))
    others = [v for v in free if v != x.name]
    y = Var(rng.choice(others)) if others and rng.random() < 0.85 else x
    kinds = ["E", "E", "="] + (["P"] if k else []) + (["D"] if dist else [])
    kind = rng.choice(kinds)
    if kind == "E":
        return Edge(x, y)
    if kind == "=":
        return Eq(x, y)
    if kind == "P":
        return Part(rng.randint(1, k), x)
    return Dist(x, y, rng.randint(0, 3))


def sentence_pool(seed: int, size: int, rank: int = 3, k: int = 0) -> list:
    """Random sentences of rank <= ``rank`` that separate some pair of small sample graphs."""
    from prescheck.logic.evaluate import evaluate
    from prescheck.logic.syntax import quantifier_rank

    rng = random.Random(seed)
    sample = [rand_graph(rng, rng.randint(1, 6)) for _ in range(24)]
    pool = []
    while len(pool) < size:
        f = rand_formula(rng, [], rank, k, depth=7)
        if quantifier_rank(f) <= rank and len({evaluate(G, f) for G in sample}) == 2:
            pool.append(f)
    return pool


# --- hypothesis strategies --------------------------------------------------

@st.composite
def graphs(draw, min_order: int = 0, max_order: int = 10) -> Graph:
    n = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@st.composite
def flipped_graphs(draw, max_order: int = 10, max_k: int = 4):
    G = draw(graphs(max_order=max_order))
    k = draw(st.integers(1, max_k))
    labels = draw(st.lists(st.integers(0, k - 1), min_size=G.order, max_size=G.order))
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    keep = draw(st.lists(st.booleans(), min_size=len(cells), max_size=len(cells)))
    F = Flip(k, frozenset(c for c, b in zip(cells, keep) if b))
    return G, Partition(k, tuple(labels)), F


@st.composite
def permutations_of(draw, n: int):
    return draw(st.permutations(list(range(n))))
