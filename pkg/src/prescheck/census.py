"""Brute-force enumeration of small graphs and their minimal induced models."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Iterator

from .graph import Graph, canonical_form, induced_subgraph


def labelled_graphs(order: int) -> Iterator[Graph]:
    pairs = list(combinations(range(order), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(order, (p for b, p in enumerate(pairs) if mask >> b & 1))


def graphs_up_to_iso(order: int) -> list[Graph]:
    seen = {}
    for G in labelled_graphs(order):
        seen.setdefault(canonical_form(G), G)
    return list(seen.values())


def minimal_induced_models(prop: Callable[[Graph], bool], max_order: int) -> list[Graph]:
    """Graphs (up to isomorphism, order <= max_order) satisfying ``prop`` minimally."""
    out = []
    for order in range(max_order + 1):
        for G in graphs_up_to_iso(order):
            if not prop(G):
                continue
            smaller = (
                induced_subgraph(G, S)[0]
                for r in range(order)
                for S in combinations(range(order), r)
            )
            if not any(prop(H) for H in smaller):
                out.append(G)
    return out
