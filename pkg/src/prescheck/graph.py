"""Finite simple graphs over dense vertex ids, partitions, flips and flip-sums.

Adjacency is kept as one Python ``int`` bitmask per vertex, so neighbourhood
intersections and candidate filtering are single integer operations.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

DEFAULT_SIZE_CAP = 4096
ISO_SIZE_CAP = 64


class GraphError(ValueError):
    pass


def size_cap() -> int:
    raw = os.environ.get("PRESCHECK_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise GraphError(f"PRESCHECK_SIZE_CAP must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise GraphError("PRESCHECK_SIZE_CAP must be non-negative")
    return cap


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple undirected graph on vertices ``0..order-1``."""

    __slots__ = ("order", "adj", "_hash")

    def __init__(self, order: int, adj: Iterable[int]):
        adj = tuple(adj)
        if len(adj) != order:
            raise GraphError(f"expected {order} adjacency rows, got {len(adj)}")
        if order > size_cap():
            raise GraphError(f"order {order} exceeds size cap {size_cap()}")
        full = (1 << order) - 1
        for v, row in enumerate(adj):
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"edge endpoint out of range at vertex {v}")
            for w in bits(row):
                if not adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        self.order = order
        self.adj = adj
        self._hash = None

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]], strict: bool = False) -> Graph:
        """Build a graph from an edge list.

        With ``strict`` set, duplicate pairs (in either orientation) are rejected
        instead of merged; loops and out-of-range endpoints are always rejected.
        """
        if order < 0:
            raise GraphError("order must be non-negative")
        if order > size_cap():
            raise GraphError(f"order {order} exceeds size cap {size_cap()}")
        adj = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if strict and adj[u] >> v & 1:
                raise GraphError(f"duplicate edge ({u}, {v})")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, adj)

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls(order, [0] * order)

    @classmethod
    def complete(cls, order: int) -> Graph:
        full = (1 << order) - 1
        return cls(order, [full & ~(1 << v) for v in range(order)])

    @classmethod
    def path(cls, order: int) -> Graph:
        return cls.from_edges(order, [(i, i + 1) for i in range(order - 1)])

    @property
    def vertices(self) -> range:
        return range(self.order)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def complement(self) -> Graph:
        full = (1 << self.order) - 1
        return Graph(self.order, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.adj == other.adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.num_edges()})"


@dataclass(frozen=True)
class Partition:
    """A labelling of vertices into ``k`` parts ``0..k-1``; empty parts allowed."""

    k: int
    part_of: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "part_of", tuple(self.part_of))
        if self.k < 0:
            raise GraphError("part count must be non-negative")
        for v, p in enumerate(self.part_of):
            if not 0 <= p < self.k:
                raise GraphError(f"vertex {v} assigned to part {p}, outside [0, {self.k})")

    @classmethod
    def single(cls, order: int) -> Partition:
        return cls(1, (0,) * order)

    @classmethod
    def from_sets(cls, order: int, parts: Iterable[Iterable[int]]) -> Partition:
        parts = [list(p) for p in parts]
        labels = [-1] * order
        for i, members in enumerate(parts):
            for v in members:
                if labels[v] != -1:
                    raise GraphError(f"vertex {v} appears in two parts")
                labels[v] = i
        if -1 in labels:
            raise GraphError(f"vertex {labels.index(-1)} is in no part")
        return cls(len(parts), tuple(labels))

    def members(self, i: int) -> list[int]:
        return [v for v, p in enumerate(self.part_of) if p == i]

    def masks(self) -> list[int]:
        out = [0] * self.k
        for v, p in enumerate(self.part_of):
            out[p] |= 1 << v
        return out

    def restrict(self, vertices: Iterable[int]) -> Partition:
        """Restriction to ``vertices`` listed in new-id order."""
        return Partition(self.k, tuple(self.part_of[v] for v in vertices))

    def __len__(self) -> int:
        return len(self.part_of)


@dataclass(frozen=True)
class Flip:
    """Symmetric subset of ``[k]^2`` (0-based part indices).

    Pairs are closed under symmetry on construction.
    """

    k: int
    pairs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        closed = set()
        for i, j in self.pairs:
            if not (0 <= i < self.k and 0 <= j < self.k):
                raise GraphError(f"flip pair ({i}, {j}) outside [0, {self.k})^2")
            closed.add((i, j))
            closed.add((j, i))
        object.__setattr__(self, "pairs", frozenset(closed))

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __bool__(self) -> bool:
        return bool(self.pairs)


def _check_flip_args(G: Graph, P: Partition, F: Flip) -> None:
    if P.k != F.k:
        raise GraphError(f"partition has {P.k} parts but flip is over [{F.k}]^2")
    if len(P.part_of) != G.order:
        raise GraphError(f"partition covers {len(P.part_of)} vertices, graph has {G.order}")


def _flip_masks(P: Partition, F: Flip) -> list[int]:
    # toggle[i] = union of parts j with (i, j) in F
    masks = P.masks()
    toggle = [0] * P.k
    for i, j in F.pairs:
        toggle[i] |= masks[j]
    return toggle


def apply_flip(G: Graph, P: Partition, F: Flip) -> Graph:
    _check_flip_args(G, P, F)
    toggle = _flip_masks(P, F)
    adj = [row ^ toggle[P.part_of[v]] & ~(1 << v) for v, row in enumerate(G.adj)]
    return Graph(G.order, adj)


def flip_sum(G: Graph, P: Partition, F: Flip) -> Graph:
    """Two disjoint copies of ``G`` with cross edges between F-related parts.

    Copy 1 keeps ids ``0..n-1``; copy 2 is shifted by ``n``.
    """
    _check_flip_args(G, P, F)
    n = G.order
    toggle = _flip_masks(P, F)
    adj = [0] * (2 * n)
    for v, row in enumerate(G.adj):
        cross = toggle[P.part_of[v]]
        adj[v] = row | cross << n
        adj[v + n] = row << n | cross
    return Graph(2 * n, adj)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    n = G.order
    return Graph(n + H.order, list(G.adj) + [row << n for row in H.adj])


def induced_subgraph(G: Graph, S: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Return ``G[S]`` with vertices renumbered in ascending order of ``S``, and the old->new map."""
    verts = sorted(set(S))
    for v in verts:
        if not 0 <= v < G.order:
            raise GraphError(f"vertex {v} out of range for order {G.order}")
    remap = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for w in bits(G.adj[v] & mask_of(verts)):
            row |= 1 << remap[w]
        adj.append(row)
    return Graph(len(verts), adj), remap


def ball_mask(G: Graph, centers: int, r: int) -> int:
    """Bitmask BFS: vertices within distance ``r`` of the centre mask."""
    seen = frontier = centers
    for _ in range(r):
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        frontier = nxt & ~seen
        if not frontier:
            break
        seen |= frontier
    return seen


def ball(G: Graph, center: int | Iterable[int], r: int) -> set[int]:
    centers = [center] if isinstance(center, int) else list(center)
    for c in centers:
        if not 0 <= c < G.order:
            raise GraphError(f"centre {c} out of range")
    return set(bits(ball_mask(G, mask_of(centers), r)))


def distances_from(G: Graph, source: int) -> list[float]:
    dist = [float("inf")] * G.order
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in bits(G.adj[v]):
            if dist[w] == float("inf"):
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(G: Graph, u: int, v: int) -> float:
    return distances_from(G, u)[v]


def is_r_independent(G: Graph, A: Iterable[int], r: int) -> bool:
    A = list(A)
    members = mask_of(A)
    if len(A) != members.bit_count():
        return False
    for a in A:
        if ball_mask(G, 1 << a, r) & members & ~(1 << a):
            return False
    return True


def greedy_independent_set(G: Graph, r: int, candidates: Iterable[int] | None = None) -> list[int]:
    """Pick vertices in ascending id order, discarding each pick's r-ball."""
    allowed = mask_of(G.vertices if candidates is None else candidates)
    chosen = []
    while allowed:
        v = (allowed & -allowed).bit_length() - 1
        chosen.append(v)
        allowed &= ~ball_mask(G, 1 << v, r)
    return chosen


def relabel(G: Graph, perm: Mapping[int, int] | list[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    adj = [0] * G.order
    for v, row in enumerate(G.adj):
        new = 0
        for w in bits(row):
            new |= 1 << perm[w]
        adj[perm[v]] = new
    return Graph(G.order, adj)


@dataclass(frozen=True)
class LabeledStructure:
    """A graph expanded with part predicates and named constants."""

    graph: Graph
    parts: Partition | None = None
    constants: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.parts is not None and len(self.parts.part_of) != self.graph.order:
            raise GraphError("partition does not cover the graph")
        for name, v in self.constants.items():
            if not 0 <= v < self.graph.order:
                raise GraphError(f"constant {name} -> {v} outside the vertex range")

    @property
    def order(self) -> int:
        return self.graph.order


def expand(G: Graph, P: Partition, F: Flip) -> LabeledStructure:
    """The flipped graph with the parts of ``P`` as unary predicates."""
    return LabeledStructure(apply_flip(G, P, F), P)


def disjoint_union_structures(A: LabeledStructure, B: LabeledStructure) -> LabeledStructure:
    if (A.parts is None) != (B.parts is None):
        raise GraphError("cannot unite a partitioned structure with an unpartitioned one")
    parts = None
    if A.parts is not None:
        if A.parts.k != B.parts.k:
            raise GraphError("part counts differ")
        parts = Partition(A.parts.k, A.parts.part_of + B.parts.part_of)
    return LabeledStructure(disjoint_union(A.graph, B.graph), parts)


def induced_structure(A: LabeledStructure, S: Iterable[int]) -> tuple[LabeledStructure, dict[int, int]]:
    sub, remap = induced_subgraph(A.graph, S)
    order = sorted(remap, key=remap.get)
    parts = A.parts.restrict(order) if A.parts is not None else None
    consts = {name: remap[v] for name, v in A.constants.items() if v in remap}
    return LabeledStructure(sub, parts, consts), remap


# --- isomorphism -----------------------------------------------------------

def _refine(G: Graph, colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colours renumbered canonically."""
    n = G.order
    while True:
        sigs = []
        for v in range(n):
            nb = sorted(colors[w] for w in bits(G.adj[v]))
            sigs.append((colors[v], tuple(nb)))
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def is_isomorphic(G: Graph, H: Graph, colors_g: list | None = None, colors_h: list | None = None,
                  bound: int = ISO_SIZE_CAP) -> bool:
    """Decide isomorphism by colour refinement then backtracking.

    Optional vertex colours must be matched exactly (used for partitioned and
    rooted structures).
    """
    if max(G.order, H.order) > bound:
        raise GraphError(f"isomorphism test limited to {bound} vertices")
    return find_isomorphism(G, H, colors_g, colors_h) is not None


def find_isomorphism(G: Graph, H: Graph, colors_g: list | None = None,
                     colors_h: list | None = None) -> dict[int, int] | None:
    n = G.order
    if n != H.order or G.num_edges() != H.num_edges():
        return None
    cg = list(colors_g) if colors_g is not None else [0] * n
    ch = list(colors_h) if colors_h is not None else [0] * n
    if sorted(map(repr, cg)) != sorted(map(repr, ch)):
        return None
    # refine both graphs jointly so colour ids are comparable
    joint = disjoint_union(G, H)
    labels = {c: i for i, c in enumerate(sorted(set(map(repr, cg + ch))))}
    init = [labels[repr(c)] for c in cg + ch]
    init = [(c, d) for c, d in zip(init, joint.degrees())]
    table = {c: i for i, c in enumerate(sorted(set(init)))}
    refined = _refine(joint, [table[c] for c in init])
    rg, rh = refined[:n], refined[n:]
    if sorted(rg) != sorted(rh):
        return None

    order = sorted(range(n), key=lambda v: (rg.count(rg[v]), -G.degree(v), v))
    by_color: dict[int, int] = {}
    for w in range(n):
        by_color[rh[w]] = by_color.get(rh[w], 0) | 1 << w
    mapping: dict[int, int] = {}
    used = 0

    def extend(idx: int) -> bool:
        nonlocal used
        if idx == n:
            return True
        v = order[idx]
        cand = by_color.get(rg[v], 0) & ~used
        for u, fu in mapping.items():
            if G.adj[v] >> u & 1:
                cand &= H.adj[fu]
            else:
                cand &= ~H.adj[fu]
            if not cand:
                return False
        for w in bits(cand):
            mapping[v] = w
            used |= 1 << w
            if extend(idx + 1):
                return True
            used &= ~(1 << w)
            del mapping[v]
        return False

    return dict(mapping) if extend(0) else None


def canonical_form(G: Graph, colors: list | None = None) -> tuple:
    """Canonical certificate: equal iff (coloured) graphs are isomorphic.

    Individualisation-refinement with lexicographic comparison of the
    relabelled adjacency; vertices that are twins of an already explored
    sibling are skipped, since swapping twins is an automorphism.
    """
    n = G.order
    base = list(colors) if colors is not None else [0] * n
    labels = {c: i for i, c in enumerate(sorted(set(map(repr, base))))}
    start = _refine(G, [labels[repr(c)] for c in base])
    best: list = [None]

    def certificate(col: list[int]) -> tuple:
        perm = sorted(range(n), key=lambda v: col[v])
        pos = {v: i for i, v in enumerate(perm)}
        rows = []
        for v in perm:
            rows.append(sum(1 << pos[w] for w in bits(G.adj[v])))
        return (tuple(sorted(labels[repr(base[v])] for v in range(n))),
                tuple(labels[repr(base[v])] for v in perm), tuple(rows))

    def search(col: list[int]) -> None:
        counts: dict[int, list[int]] = {}
        for v in range(n):
            counts.setdefault(col[v], []).append(v)
        target = None
        for c in sorted(counts):
            if len(counts[c]) > 1:
                target = counts[c]
                break
        if target is None:
            cert = certificate(col)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        tried: list[int] = []
        for v in target:
            if any(_twins(G, v, t) for t in tried):
                continue
            tried.append(v)
            bumped = [2 * c + (1 if c > col[v] or (c == col[v] and w != v) else 0)
                      for w, c in enumerate(col)]
            search(_refine(G, bumped))

    search(start)
    # colour names are part of the form: recolouring changes it
    return (n, tuple(sorted(labels))) + best[0]


def _twins(G: Graph, u: int, v: int) -> bool:
    pu, pv = 1 << u, 1 << v
    return (G.adj[u] & ~pv) == (G.adj[v] & ~pu)
