"""Recursive-descent parser for the formula DSL.

Grammar (loosest binding first)::

    formula  := quant | implies
    quant    := ("exists" | "forall" | "exists!") IDENT ["in" guard] "." formula
    implies  := xor ["implies" formula]
    xor      := or {"xor" or}
    or       := and {"or" and}
    and      := unary {"and" unary}
    unary    := "not" unary | quant | atom | "(" formula ")"
    guard    := "ball" "(" term "," INT ")" | "$" IDENT | IDENT
    atom     := "true" | "false" | "E" "(" term "," term ")" | "P_" INT "(" term ")"
              | "dist" "(" term "," term ")" ("<=" | ">") INT
              | term ("=" | "!=") term | term "in" "$" IDENT | IDENT "(" term {"," term} ")"
    term     := IDENT | "@" IDENT

Guarded quantifiers and ``exists!`` are expanded while parsing. Named guards
(``in U``) and named predicates (``leq(x, y)``) come from a :class:`Definitions`
table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .syntax import (
    And, Bottom, Const, Dist, Edge, Eq, Exists, Forall, Formula, Implies, InSet, Not, Or, Part,
    Top, Var, Xor, all_vars, fresh_name, free_vars, substitute,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text[max(0, pos - 15):pos]}>>{text[pos:pos + 15]}")


KEYWORDS = {"exists", "forall", "and", "or", "not", "implies", "xor", "in", "ball", "true", "false", "dist"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<part>P_(?P<pidx>\d+)\b)
  | (?P<uniq>exists!)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<op><=|!=|[()=,.@$>])
""", re.VERBOSE)


@dataclass
class Definitions:
    """Macro table for the parser.

    ``guards`` maps a name to ``(placeholder, formula)``: ``forall x in NAME. b``
    expands to ``forall x. formula[x/placeholder] implies b``. ``predicates``
    maps a name to ``(params, formula)`` and is substituted at call sites.
    """

    guards: dict = field(default_factory=dict)
    predicates: dict = field(default_factory=dict)
    # exists! (z in G) theta: True puts the guard on the uniqueness variable too
    unique_guard_both: bool = True
    max_part: int | None = None


@dataclass
class _Tok:
    kind: str
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind == "pidx":
            kind = "part"
        elif kind == "uniq":
            kind = "ident"
        if kind != "ws":
            value = m.group("pidx") if kind == "part" else m.group(0)
            toks.append(_Tok(kind, value, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, defs: Definitions):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.defs = defs

    # -- token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str) -> FormulaSyntaxError:
        return FormulaSyntaxError(message, self.tok.pos, self.text)

    def at(self, value: str) -> bool:
        return self.tok.value == value and self.tok.kind in ("ident", "op")

    def accept(self, value: str) -> bool:
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value: str) -> None:
        if not self.accept(value):
            raise self.error(f"expected {value!r}")

    def ident(self) -> str:
        if self.tok.kind != "ident" or self.tok.value in KEYWORDS:
            raise self.error("expected identifier")
        name = self.tok.value
        self.i += 1
        return name

    def number(self) -> int:
        if self.tok.kind != "num":
            raise self.error("expected integer")
        value = int(self.tok.value)
        self.i += 1
        return value

    # -- grammar
    def parse(self) -> Formula:
        f = self.formula()
        if self.tok.kind != "eof":
            raise self.error("trailing input")
        return f

    def formula(self) -> Formula:
        if self.at("exists") or self.at("forall") or self.at("exists!"):
            return self.quant()
        return self.implies()

    def quant(self) -> Formula:
        word = self.tok.value
        self.i += 1
        var = self.ident()
        guard = None
        if self.accept("in"):
            guard = self.guard(var)
        self.expect(".")
        body = self.formula()
        if word == "exists":
            return Exists(var, body if guard is None else And((guard, body)))
        if word == "forall":
            return Forall(var, body if guard is None else Implies(guard, body))
        return self.unique(var, guard, body)

    def unique(self, var: str, guard: Formula | None, body: Formula) -> Formula:
        taken = all_vars(body) | {var} | (all_vars(guard) if guard is not None else set())
        other = fresh_name(var, taken)
        body2 = substitute(body, {var: Var(other)})
        if guard is not None and self.defs.unique_guard_both:
            premise = And((substitute(guard, {var: Var(other)}), body2))
        else:
            premise = body2
        uniq = Forall(other, Implies(premise, Eq(Var(other), Var(var))))
        parts = ((guard,) if guard is not None else ()) + (body, uniq)
        return Exists(var, And(parts))

    def guard(self, var: str) -> Formula:
        if self.accept("ball"):
            self.expect("(")
            center = self.term()
            self.expect(",")
            radius = self.number()
            self.expect(")")
            return Dist(center, Var(var), radius)
        if self.accept("$"):
            return InSet(Var(var), self.ident())
        pos = self.tok.pos
        name = self.ident()
        if name not in self.defs.guards:
            raise FormulaSyntaxError(f"unknown guard {name!r}", pos, self.text)
        placeholder, formula = self.defs.guards[name]
        return substitute(formula, {placeholder: Var(var)})

    def implies(self) -> Formula:
        left = self.xor()
        if self.accept("implies"):
            return Implies(left, self.formula())
        return left

    def xor(self) -> Formula:
        left = self.disj()
        while self.accept("xor"):
            left = Xor(left, self.disj())
        return left

    def disj(self) -> Formula:
        args = [self.conj()]
        while self.accept("or"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self) -> Formula:
        args = [self.unary()]
        while self.accept("and"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Formula:
        if self.accept("not"):
            return Not(self.unary())
        if self.at("exists") or self.at("forall") or self.at("exists!"):
            return self.quant()
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        tok = self.tok
        if self.accept("true"):
            return Top()
        if self.accept("false"):
            return Bottom()
        if tok.kind == "part":
            self.i += 1
            index = int(tok.value)
            if index < 1 or (self.defs.max_part is not None and index > self.defs.max_part):
                raise FormulaSyntaxError(f"unknown predicate P_{index}", tok.pos, self.text)
            self.expect("(")
            t = self.term()
            self.expect(")")
            return Part(index, t)
        if self.accept("dist"):
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            if self.accept("<="):
                return Dist(a, b, self.number())
            if self.accept(">"):
                return Not(Dist(a, b, self.number()))
            raise self.error("expected '<=' or '>' after dist(...)")
        if tok.kind == "ident" and tok.value == "E" and self.toks[self.i + 1].value == "(":
            self.i += 1
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(")")
            return Edge(a, b)
        if (tok.kind == "ident" and tok.value not in KEYWORDS
                and self.toks[self.i + 1].value == "("):
            return self.call()
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        if self.accept("in"):
            self.expect("$")
            return InSet(left, self.ident())
        raise self.error("expected '=', '!=' or 'in' after term")

    def call(self) -> Formula:
        pos = self.tok.pos
        name = self.ident()
        if name not in self.defs.predicates:
            raise FormulaSyntaxError(f"unknown predicate {name!r}", pos, self.text)
        params, body = self.defs.predicates[name]
        self.expect("(")
        args = [self.term()]
        while self.accept(","):
            args.append(self.term())
        self.expect(")")
        if len(args) != len(params):
            raise FormulaSyntaxError(f"{name} takes {len(params)} arguments", pos, self.text)
        # rename params first so simultaneous substitution cannot collide
        return substitute(body, dict(zip(params, args)))

    def term(self):
        if self.accept("@"):
            return Const(self.ident())
        return Var(self.ident())


def parse_formula(text: str, defs: Definitions | None = None) -> Formula:
    return _Parser(text, defs or Definitions()).parse()


def parse_sentence(text: str, defs: Definitions | None = None) -> Formula:
    f = parse_formula(text, defs)
    if free_vars(f):
        raise FormulaSyntaxError(f"free variables {sorted(free_vars(f))} in sentence", 0, text)
    return f
