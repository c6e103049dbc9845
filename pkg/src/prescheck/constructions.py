"""Concrete graph families: H_n, its gadget, half-graphs and the D_d flip recipe."""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Flip, Graph, GraphError, Partition, apply_flip, induced_subgraph

# order of the 14 gadget roles, matching the bound variables of the sentence
GADGET_ROLES = ("v1", "v2", "v3", "v4", "v5", "v6", "u1", "u2", "u3", "u4", "u5", "u6", "a", "b")


@dataclass(frozen=True)
class NamedGraph:
    graph: Graph
    names: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.names.values())) != len(self.names):
            raise GraphError("vertex names must be injective")
        for name, v in self.names.items():
            if not 0 <= v < self.graph.order:
                raise GraphError(f"name {name} -> {v} outside the vertex range")

    def __getitem__(self, name: str) -> int:
        return self.names[name]

    def labels_by_vertex(self) -> dict[int, str]:
        return {v: k for k, v in self.names.items()}


def _check_n(n: int) -> None:
    if n < 7:
        raise GraphError(f"H_n is defined for n >= 7, got {n}")


def h_names(n: int) -> dict[str, int]:
    """Canonical ids: v_i -> i-1, u_i -> n+i-1, a -> 2n, b -> 2n+1."""
    names = {f"v{i}": i - 1 for i in range(1, n + 1)}
    names.update({f"u{i}": n + i - 1 for i in range(1, n + 1)})
    names["a"] = 2 * n
    names["b"] = 2 * n + 1
    return names


def build_H(n: int) -> NamedGraph:
    _check_n(n)
    nm = h_names(n)
    v = lambda i: nm[f"v{i}"]  # noqa: E731
    u = lambda i: nm[f"u{i}"]  # noqa: E731
    edges = []
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            edges.append((v(i), u(j)))
    for i in range(1, n):
        edges.append((v(i), v(i + 1)))
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            edges.append((u(i), u(j)))
    edges += [(nm["a"], u(i)) for i in range(2, n + 1)]
    edges += [(nm["b"], u(i)) for i in range(n - 1, n + 1)]
    edges += [(nm["a"], v(2)), (nm["b"], v(n - 1))]
    return NamedGraph(Graph.from_edges(2 * n + 2, edges, strict=True), nm)


def gadget_roles(n: int) -> dict[str, str]:
    """Gadget role -> H_n vertex name (positions 4..6 are n-2..n)."""
    _check_n(n)
    idx = (1, 2, 3, n - 2, n - 1, n)
    out = {f"v{p}": f"v{i}" for p, i in enumerate(idx, 1)}
    out.update({f"u{p}": f"u{i}" for p, i in enumerate(idx, 1)})
    out.update(a="a", b="b")
    return out


def gadget_tuple(n: int) -> tuple[int, ...]:
    """The inclusion tuple of I_n inside build_H(n), in role order."""
    nm = h_names(n)
    roles = gadget_roles(n)
    return tuple(nm[roles[r]] for r in GADGET_ROLES)


def gadget_subset(n: int) -> frozenset[int]:
    return frozenset(gadget_tuple(n))


def build_gadget() -> NamedGraph:
    """H_7 induced on I_7, renumbered so role ``GADGET_ROLES[i]`` is vertex ``i``."""
    H = build_H(7).graph
    tup = gadget_tuple(7)
    edges = [(i, j) for i in range(14) for j in range(i + 1, 14) if H.has_edge(tup[i], tup[j])]
    return NamedGraph(Graph.from_edges(14, edges), {r: i for i, r in enumerate(GADGET_ROLES)})


def build_gadget_prime() -> NamedGraph:
    """Gadget restricted to ``v1, v2, v3, u1, u2, u3, a``."""
    G = build_gadget()
    keep = ["v1", "v2", "v3", "u1", "u2", "u3", "a"]
    sub, remap = induced_subgraph(G.graph, [G[k] for k in keep])
    return NamedGraph(sub, {k: remap[G[k]] for k in keep})


def build_half_graph(n: int) -> NamedGraph:
    """u_i ~ v_j iff i <= j; u_i = i-1, v_j = n+j-1."""
    if n < 1:
        raise GraphError("half-graph order must be at least 1")
    names = {f"u{i}": i - 1 for i in range(1, n + 1)}
    names.update({f"v{j}": n + j - 1 for j in range(1, n + 1)})
    edges = [(i - 1, n + j - 1) for i in range(1, n + 1) for j in range(i, n + 1)]
    return NamedGraph(Graph.from_edges(2 * n, edges), names)


def half_graph_sides(n: int) -> Partition:
    return Partition(2, (0,) * n + (1,) * n)


class NotInClass(ValueError):
    """Raised by dd_flip when neither G nor its complement has max degree <= d."""


def dd_flip(G: Graph, d: int) -> tuple[Partition, Flip]:
    P = Partition.single(G.order)
    if G.max_degree() <= d:
        return P, Flip(1)
    if G.complement().max_degree() <= d:
        return P, Flip(1, frozenset({(0, 0)}))
    raise NotInClass(f"neither the graph nor its complement has max degree <= {d}")


def dd_threshold(m: int, d: int, r: int) -> int:
    """Order above which a D_d graph has an r-independent set of size m after flipping."""
    return (m - 1) * (d + 1) ** r + 1


def dd_flipped(G: Graph, d: int) -> Graph:
    P, F = dd_flip(G, d)
    return apply_flip(G, P, F)
