"""Searching for flips that expose large r-independent sets."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product

from ..graph import Flip, Graph, Partition, apply_flip, greedy_independent_set, is_r_independent

EXHAUSTIVE_ORDER = 14


@dataclass
class FlatWitness:
    partition: Partition
    flip: Flip
    independent: list
    exhaustive: bool
    explored: int

    def to_json(self) -> dict:
        return {"partition": list(self.partition.part_of), "k": self.partition.k,
                "flip": [list(p) for p in self.flip.sorted_pairs()],
                "independent": self.independent, "size": len(self.independent),
                "exhaustive": self.exhaustive, "explored": self.explored}


def verify_flat_witness(G: Graph, P: Partition, F: Flip, A, r: int, m: int) -> bool:
    A = list(A)
    return len(set(A)) >= m and is_r_independent(apply_flip(G, P, F), A, r)


def all_flips(k: int) -> list[Flip]:
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    out = []
    for mask in range(1 << len(cells)):
        out.append(Flip(k, frozenset(c for b, c in enumerate(cells) if mask >> b & 1)))
    return out


def flipflat_probe(G: Graph, r: int, k: int, budget: int = 1000, seed: int = 0) -> FlatWitness | None:
    """Best greedy r-independent set over k-partitions and flips.

    Exhaustive when k <= 2 and the graph has at most 14 vertices (vertex 0 is
    pinned to part 0); otherwise ``budget`` random (partition, flip) pairs under ``seed``.
    """
    n = G.order
    if k < 1:
        raise ValueError("k must be positive")
    flips = all_flips(k)
    best: FlatWitness | None = None
    exhaustive = k <= 2 and n <= EXHAUSTIVE_ORDER

    def consider(labels: tuple, explored: int, candidates=flips) -> None:
        nonlocal best
        P = Partition(k, labels)
        for F in candidates:
            A = greedy_independent_set(apply_flip(G, P, F), r)
            if best is None or len(A) > len(best.independent):
                best = FlatWitness(P, F, sorted(A), exhaustive, explored)

    explored = 0
    if n == 0:
        return FlatWitness(Partition(k, ()), Flip(k), [], True, 0)
    if exhaustive:
        for rest in product(range(k), repeat=n - 1):
            explored += 1
            consider((0,) + rest, explored)
    else:
        rng = random.Random(seed)
        consider((0,) * n, 0)
        for _ in range(budget):
            explored += 1
            consider(tuple(rng.randrange(k) for _ in range(n)), explored, [rng.choice(flips)])
    best.explored = explored
    return best
