"""Pretty-printer emitting DSL text that parses back to the same AST."""

from __future__ import annotations

from .syntax import (
    And, Bottom, Dist, Edge, Eq, Exists, Forall, Formula, Implies, InSet, Not, Or, Part, Top, Xor,
)

# binding strength: larger binds tighter
_PREC = {Implies: 1, Xor: 2, Or: 3, And: 4, Not: 5}


def _atom(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Edge):
        return f"E({f.left}, {f.right})"
    if isinstance(f, Eq):
        return f"{f.left} = {f.right}"
    if isinstance(f, Part):
        return f"P_{f.index}({f.term})"
    if isinstance(f, Dist):
        return f"dist({f.left}, {f.right}) <= {f.radius}"
    if isinstance(f, InSet):
        return f"{f.term} in ${f.name}"
    raise TypeError(f"not an atom: {type(f).__name__}")


def to_text(f: Formula) -> str:
    return _fmt(f, 0)


def _fmt(f: Formula, ctx: int) -> str:
    if isinstance(f, (Exists, Forall)):
        word = "exists" if isinstance(f, Exists) else "forall"
        text = f"{word} {f.var}. {_fmt(f.body, 0)}"
        return f"({text})" if ctx > 0 else text
    prec = _PREC.get(type(f))
    if prec is None:
        return _atom(f)
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            text = f"{f.body.left} != {f.body.right}"
        elif isinstance(f.body, Dist):
            text = f"dist({f.body.left}, {f.body.right}) > {f.body.radius}"
        else:
            text = "not " + _fmt(f.body, prec)
    elif isinstance(f, (And, Or)):
        word = " and " if isinstance(f, And) else " or "
        if len(f.args) < 2:
            # no surface syntax that would reparse to the same node
            raise ValueError(f"cannot print {type(f).__name__} with {len(f.args)} argument(s)")
        text = word.join(_fmt(a, prec + 1) for a in f.args)
    elif isinstance(f, Xor):
        # left-associative
        text = f"{_fmt(f.left, prec)} xor {_fmt(f.right, prec + 1)}"
    else:
        # right-associative
        text = f"{_fmt(f.left, prec + 1)} implies {_fmt(f.right, prec)}"
    return f"({text})" if prec < ctx else text
