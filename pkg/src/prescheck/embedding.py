"""Induced embedding search and random extensions."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graph import Graph, bits


@dataclass(frozen=True)
class Embedding:
    """Pattern vertex ``i`` maps to ``images[i]``."""

    images: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.images[v]

    def pairs(self) -> list[list[int]]:
        return [[i, w] for i, w in enumerate(self.images)]


def is_embedding(pattern: Graph, host: Graph, f) -> bool:
    images = f.images if isinstance(f, Embedding) else tuple(f)
    if len(images) != pattern.order or len(set(images)) != len(images):
        return False
    if any(not 0 <= w < host.order for w in images):
        return False
    for u in range(pattern.order):
        for v in range(u + 1, pattern.order):
            if pattern.has_edge(u, v) != host.has_edge(images[u], images[v]):
                return False
    return True


def search_order(pattern: Graph) -> list[int]:
    return sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v))


def find_embeddings(pattern: Graph, host: Graph, limit: int | None = None,
                    fixed: dict[int, int] | None = None) -> list[Embedding]:
    """All induced embeddings (or the first ``limit``), in a deterministic order.

    Pattern vertices are placed by (degree desc, id); at each step the candidate
    mask is the intersection of neighbour / non-neighbour masks of placed images,
    and host candidates are tried in ascending id.
    """
    k = pattern.order
    out: list[Embedding] = []
    if k > host.order:
        return out
    order = search_order(pattern)
    full = (1 << host.order) - 1
    hdeg = host.degrees()
    min_deg = {v: pattern.degree(v) for v in order}
    max_deg = {v: host.order - 1 - (k - 1 - pattern.degree(v)) for v in order}
    static = {}
    for v in order:
        m = 0
        for w in host.vertices:
            if min_deg[v] <= hdeg[w] <= max_deg[v]:
                m |= 1 << w
        if fixed and v in fixed:
            m &= 1 << fixed[v]
        static[v] = m
    # earlier-placed pattern neighbours of each position
    placed_before = []
    for idx, v in enumerate(order):
        placed_before.append([(order[j], pattern.has_edge(v, order[j])) for j in range(idx)])
    images = [-1] * k

    def extend(idx: int, used: int) -> bool:
        if idx == k:
            out.append(Embedding(tuple(images)))
            return limit is not None and len(out) >= limit
        v = order[idx]
        cand = static[v] & ~used
        for u, adjacent in placed_before[idx]:
            row = host.adj[images[u]]
            cand &= row if adjacent else (full & ~row & ~(1 << images[u]))
            if not cand:
                return False
        for w in bits(cand):
            images[v] = w
            if extend(idx + 1, used | 1 << w):
                return True
        images[v] = -1
        return False

    extend(0, 0)
    return out


def count_embeddings(pattern: Graph, host: Graph) -> int:
    return len(find_embeddings(pattern, host))


def has_embedding(pattern: Graph, host: Graph) -> bool:
    return bool(find_embeddings(pattern, host, limit=1))


def compose(f: Embedding, g: Embedding) -> Embedding:
    """``g . f``: first f, then g."""
    return Embedding(tuple(g[w] for w in f.images))


def random_graph(order: int, density: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < density]
    return Graph.from_edges(order, edges)


def random_extension(G: Graph, extra: int, density: float, seed) -> tuple[Graph, Embedding]:
    """``G`` plus ``extra`` fresh vertices attached at random; witness is the identity."""
    rng = random.Random(seed)
    n = G.order
    adj = list(G.adj) + [0] * extra
    for w in range(n, n + extra):
        for u in range(w):
            if rng.random() < density:
                adj[u] |= 1 << w
                adj[w] |= 1 << u
    return Graph(n + extra, adj), Embedding(tuple(range(n)))
