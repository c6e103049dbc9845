"""Reading and writing the JSON graph document and the plain edge-list format."""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Flip, Graph, GraphError, Partition


class GraphDocument:
    """A graph together with the optional labels, partition and flip of a JSON document."""

    def __init__(self, graph: Graph, labels: dict[str, int] | None = None,
                 partition: Partition | None = None, flip: Flip | None = None):
        self.graph = graph
        self.labels = dict(labels or {})
        self.partition = partition
        self.flip = flip

    def to_json(self) -> dict:
        doc: dict = {"order": self.graph.order, "edges": [list(e) for e in self.graph.edges()]}
        if self.labels:
            doc["labels"] = dict(self.labels)
        if self.partition is not None:
            doc["partition"] = list(self.partition.part_of)
        if self.flip is not None:
            doc["flip"] = [list(p) for p in self.flip.sorted_pairs()]
        if self.partition is not None or self.flip is not None:
            doc["k"] = self.partition.k if self.partition is not None else self.flip.k
        return doc


def _implied_k(part_of) -> int:
    return max(part_of, default=-1) + 1


def parse_document(doc: dict) -> GraphDocument:
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    if "order" not in doc or "edges" not in doc:
        raise GraphError("graph document needs 'order' and 'edges'")
    order = doc["order"]
    if not isinstance(order, int) or order < 0:
        raise GraphError("'order' must be a non-negative integer")
    edges = []
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphError(f"malformed edge {e!r}")
        edges.append((e[0], e[1]))
    graph = Graph.from_edges(order, edges, strict=True)
    labels = doc.get("labels") or {}
    for name, v in labels.items():
        if not isinstance(v, int) or not 0 <= v < order:
            raise GraphError(f"label {name!r} points outside the vertex range")
    if len(set(labels.values())) != len(labels):
        raise GraphError("labels must be injective")
    partition = flip = None
    k = doc.get("k")
    if "partition" in doc:
        part_of = doc["partition"]
        if len(part_of) != order:
            raise GraphError("partition length differs from order")
        pk = k if k is not None else max(_implied_k(part_of), _implied_k([i for p in doc.get("flip", []) for i in p]))
        partition = Partition(pk, tuple(part_of))
    if "flip" in doc:
        fk = partition.k if partition is not None else (k if k is not None else
                                                         _implied_k([i for p in doc["flip"] for i in p]))
        flip = Flip(fk, frozenset((int(i), int(j)) for i, j in doc["flip"]))
    return GraphDocument(graph, labels, partition, flip)


def load_document(path: str | Path) -> GraphDocument:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return parse_document(json.loads(text))
    return GraphDocument(parse_edge_list(text))


def load_graph(path: str | Path) -> Graph:
    return load_document(path).graph


def dump_document(doc: GraphDocument) -> str:
    return json.dumps(doc.to_json(), sort_keys=True)


def parse_edge_list(text: str, order: int | None = None) -> Graph:
    """One ``u v`` pair per line; ``#`` starts a comment.

    A line ``# order N`` fixes the vertex count (isolated vertices otherwise
    cannot be expressed); without it the order is one more than the largest id.
    """
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            words = line[1:].split()
            if len(words) == 2 and words[0] == "order" and order is None:
                order = int(words[1])
            continue
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer vertex id") from exc
    if order is None:
        order = max((max(e) for e in edges), default=-1) + 1
    return Graph.from_edges(order, edges, strict=True)


def format_edge_list(G: Graph) -> str:
    lines = [f"# order {G.order}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"
