"""SC-decomposition trees: disjoint unions plus subset complementation."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .graph import Flip, Graph, GraphError, Partition, bits, mask_of


@dataclass(frozen=True)
class SCTree:
    """A leaf (``vertex`` set, no children) or an internal node with a flip set."""

    vertex: int | None = None
    children: tuple = ()
    flip_set: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        object.__setattr__(self, "flip_set", frozenset(self.flip_set))
        if self.vertex is None and not self.children:
            raise GraphError("internal SC node needs at least one child")
        if self.vertex is not None and (self.children or self.flip_set):
            raise GraphError("a leaf carries no children or flip set")
        if not self.flip_set <= self.vertices():
            raise GraphError("flip set is not contained in the node's vertices")

    @classmethod
    def leaf(cls, v: int) -> SCTree:
        return cls(vertex=v)

    @classmethod
    def node(cls, children, flip_set=()) -> SCTree:
        return cls(children=tuple(children), flip_set=frozenset(flip_set))

    @property
    def is_leaf(self) -> bool:
        return self.vertex is not None

    def vertices(self) -> frozenset:
        if self.is_leaf:
            return frozenset({self.vertex})
        out = frozenset()
        for c in self.children:
            out |= c.vertices()
        return out

    def height(self) -> int:
        """Number of nodes on a longest root-to-leaf path (a single leaf has height 1)."""
        if self.is_leaf:
            return 1
        return 1 + max(c.height() for c in self.children)

    def to_json(self) -> dict:
        if self.is_leaf:
            return {"leaf": self.vertex}
        return {"flip": sorted(self.flip_set), "children": [c.to_json() for c in self.children]}

    @classmethod
    def from_json(cls, doc: dict) -> SCTree:
        if "leaf" in doc:
            return cls.leaf(int(doc["leaf"]))
        return cls.node([cls.from_json(c) for c in doc["children"]], doc.get("flip", ()))

    def shifted(self, offset: int) -> SCTree:
        if self.is_leaf:
            return SCTree.leaf(self.vertex + offset)
        return SCTree.node([c.shifted(offset) for c in self.children],
                           {v + offset for v in self.flip_set})


def _leaves(T: SCTree) -> list[int]:
    if T.is_leaf:
        return [T.vertex]
    out = []
    for c in T.children:
        out += _leaves(c)
    return out


def eval_sc_tree(T: SCTree) -> Graph:
    """Evaluate bottom-up; leaves must carry the ids ``0..N-1`` exactly once."""
    leaves = _leaves(T)
    n = len(leaves)
    if sorted(leaves) != list(range(n)):
        raise GraphError("leaf ids must be exactly 0..N-1")
    adj = [0] * n

    def walk(t: SCTree) -> None:
        for c in t.children:
            walk(c)
        X = mask_of(t.flip_set)
        for v in t.flip_set:
            adj[v] ^= X & ~(1 << v)

    walk(T)
    return Graph(n, adj)


def node_at(T: SCTree, steps) -> list[SCTree]:
    """Nodes on the path from the root following child indices ``steps``."""
    path = [T]
    for s in steps:
        cur = path[-1]
        if cur.is_leaf or not 0 <= s < len(cur.children):
            raise GraphError(f"invalid path step {s}")
        path.append(cur.children[s])
    if path[-1].is_leaf:
        raise GraphError("path must end at an internal node")
    return path


def double_sc_tree(T: SCTree, steps) -> tuple[SCTree, Partition, Flip]:
    """Copy-and-merge along a root path so the result evaluates to a flip-sum.

    Copies shift leaf ids by N. Parts are keyed by membership bits over the
    path's flip sets; parts i, j are flipped iff they share an odd number of bits.
    """
    steps = list(steps)
    path = node_at(T, steps)
    n = len(_leaves(T))
    ell = len(path)

    def copy_children(t: SCTree, keep: int | None, replacement: SCTree | None) -> SCTree:
        kids = []
        for idx, c in enumerate(t.children):
            if idx == keep:
                kids.append(replacement)
            else:
                kids.append(c)
                kids.append(c.shifted(n))
        return SCTree.node(kids, t.flip_set | {v + n for v in t.flip_set})

    new = copy_children(path[-1], None, None)
    for i in range(ell - 2, -1, -1):
        new = copy_children(path[i], steps[i], new)

    part_of = []
    for v in range(n):
        part_of.append(sum(1 << t for t in range(ell) if v in path[t].flip_set))
    k = 1 << ell
    pairs = {(i, j) for i in range(k) for j in range(k) if (i & j).bit_count() % 2}
    return new, Partition(k, tuple(part_of)), Flip(k, frozenset(pairs))


def random_sc_tree(rng: random.Random, height: int, max_children: int = 3,
                   flip_prob: float = 0.5, max_leaves: int = 40) -> SCTree:
    """Random tree of height at most ``height``; leaves are renumbered 0..N-1 in DFS order."""
    counter = [0]

    def build(h: int) -> SCTree:
        if h <= 1 or counter[0] >= max_leaves or rng.random() < 0.15:
            counter[0] += 1
            return SCTree.leaf(counter[0] - 1)
        kids = [build(h - 1) for _ in range(rng.randint(1, max_children))]
        verts = set()
        for c in kids:
            verts |= c.vertices()
        X = {v for v in verts if rng.random() < flip_prob}
        return SCTree.node(kids, X)

    # force an internal root so there is a path to double
    kids = [build(height - 1) for _ in range(rng.randint(1, max_children))]
    verts = set()
    for c in kids:
        verts |= c.vertices()
    return SCTree.node(kids, {v for v in verts if rng.random() < flip_prob})


def random_internal_path(rng: random.Random, T: SCTree) -> list[int]:
    steps: list[int] = []
    cur = T
    while True:
        internal = [i for i, c in enumerate(cur.children) if not c.is_leaf]
        if not internal or rng.random() < 0.35:
            return steps
        s = rng.choice(internal)
        steps.append(s)
        cur = cur.children[s]


def count_components(G: Graph) -> int:
    seen = 0
    count = 0
    for v in G.vertices:
        if seen >> v & 1:
            continue
        count += 1
        frontier = comp = 1 << v
        while frontier:
            nxt = 0
            for w in bits(frontier):
                nxt |= G.adj[w]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
    return count
