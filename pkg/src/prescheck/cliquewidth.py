"""Clique-width expressions as postfix programs, and a linear width-4 term for H_n."""

from __future__ import annotations

from dataclasses import dataclass

from .constructions import h_names
from .graph import Graph, GraphError

# ops: ("vertex", color, label) | ("union",) | ("join", i, j) | ("recolor", i, j)


class ExpressionError(ValueError):
    pass


@dataclass(frozen=True)
class CliqueExpression:
    ops: tuple
    colors: int

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(tuple(op) for op in self.ops))
        for op in self.ops:
            for c in _op_colors(op):
                if not 1 <= c <= self.colors:
                    raise ExpressionError(f"colour {c} outside [1, {self.colors}] in {op}")
            if op[0] == "join" and op[1] == op[2]:
                raise ExpressionError("join needs two distinct colours")

    def width(self) -> int:
        used = set()
        for op in self.ops:
            used.update(_op_colors(op))
        return len(used)

    def is_linear(self) -> bool:
        """Every union has a single freshly created vertex as one operand."""
        sizes: list[int] = []
        for op in self.ops:
            if op[0] == "vertex":
                sizes.append(1)
            elif op[0] == "union":
                b, a = sizes.pop(), sizes.pop()
                if min(a, b) != 1:
                    return False
                sizes.append(a + b)
        return True

    def to_json(self) -> dict:
        return {"colors": self.colors, "ops": [list(op) for op in self.ops]}

    @classmethod
    def from_json(cls, doc: dict) -> CliqueExpression:
        return cls(tuple(tuple(op) for op in doc["ops"]), int(doc["colors"]))


def _op_colors(op) -> tuple:
    if op[0] == "vertex":
        return (op[1],)
    if op[0] in ("join", "recolor"):
        return (op[1], op[2])
    if op[0] == "union":
        return ()
    raise ExpressionError(f"unknown operation {op[0]!r}")


def eval_clique_expression(e: CliqueExpression) -> tuple[Graph, list]:
    """Evaluate; returns the graph and the creation-order vertex labels."""
    stack: list[tuple[list, list, set]] = []  # (vertex ids, colours, edges)
    labels: list = []
    for op in e.ops:
        kind = op[0]
        if kind == "vertex":
            labels.append(op[2] if len(op) > 2 else len(labels))
            stack.append(([len(labels) - 1], [op[1]], set()))
        elif kind == "union":
            if len(stack) < 2:
                raise ExpressionError("union needs two operands")
            vb, cb, eb = stack.pop()
            va, ca, ea = stack.pop()
            stack.append((va + vb, ca + cb, ea | eb))
        else:
            if not stack:
                raise ExpressionError(f"{kind} on an empty stack")
            verts, cols, edges = stack[-1]
            i, j = op[1], op[2]
            if kind == "join":
                left = [v for v, c in zip(verts, cols) if c == i]
                right = [v for v, c in zip(verts, cols) if c == j]
                edges.update((min(a, b), max(a, b)) for a in left for b in right)
            else:
                cols[:] = [j if c == i else c for c in cols]
    if len(stack) != 1:
        raise ExpressionError(f"expression leaves {len(stack)} terms on the stack")
    return Graph.from_edges(len(labels), stack[0][2]), labels


class _Linear:
    def __init__(self):
        self.ops: list = []
        self.started = False

    def create(self, label: str, color: int) -> None:
        self.ops.append(("vertex", color, label))
        if self.started:
            self.ops.append(("union",))
        self.started = True

    def join(self, i: int, j: int) -> None:
        self.ops.append(("join", i, j))

    def recolor(self, i: int, j: int) -> None:
        self.ops.append(("recolor", i, j))


def hn_clique_expression(n: int) -> CliqueExpression:
    """Linear 4-colour expression for H_n built column by column.

    Colour 1 holds finished vertices (adjacent to every later u, never to a
    later v), 2 the current v, 3 the current u, 4 is scratch.
    """
    if n < 7:
        raise GraphError(f"H_n is defined for n >= 7, got {n}")
    b = _Linear()
    b.create("v1", 2)
    b.create("u1", 3)
    b.join(2, 3)
    for i in range(2, n - 1):
        b.create(f"v{i}", 4)
        b.join(4, 2)          # v_{i-1} ~ v_i
        b.recolor(2, 1)
        if i == 2:
            b.create("a", 2)
            b.join(2, 4)      # a ~ v_2
            b.recolor(2, 1)   # a joins every later u
        b.create(f"u{i}", 2)
        b.join(2, 1)          # all earlier v's, a, and u_j for j < i-1
        b.join(2, 4)          # v_i
        b.recolor(3, 1)       # u_{i-1} now old; u_i must skip it, so join came first
        b.recolor(2, 3)
        b.recolor(4, 2)
    # column n-1 also attaches b
    b.create(f"v{n - 1}", 4)
    b.join(4, 2)
    b.recolor(2, 1)
    b.create(f"u{n - 1}", 2)
    b.join(2, 1)
    b.join(2, 4)
    b.recolor(3, 1)
    b.create("b", 3)
    b.join(3, 4)              # b ~ v_{n-1}
    b.join(3, 2)              # b ~ u_{n-1}
    b.recolor(3, 1)
    # now: 1 = old (incl. b, u_{n-2}), 2 = u_{n-1}, 4 = v_{n-1}
    b.create(f"v{n}", 3)
    b.join(3, 4)              # v_{n-1} ~ v_n
    b.recolor(4, 1)
    b.recolor(3, 1)
    b.create(f"u{n}", 3)
    b.join(3, 1)              # everything except u_{n-1}
    return CliqueExpression(tuple(b.ops), 4)


def expression_to_h(n: int) -> tuple[Graph, dict[int, int]]:
    """Evaluate the H_n expression and map creation order to canonical H_n ids."""
    G, labels = eval_clique_expression(hn_clique_expression(n))
    names = h_names(n)
    return G, {i: names[lab] for i, lab in enumerate(labels)}
