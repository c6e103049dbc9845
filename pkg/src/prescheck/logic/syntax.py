"""First-order formulas over the graph signature, with part predicates and distance atoms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return "@" + self.name


Term = Union[Var, Const]


class Formula:
    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And((self, other))

    def __or__(self, other: Formula) -> Formula:
        return Or((self, other))

    def __invert__(self) -> Formula:
        return Not(self)

    def __str__(self) -> str:
        from .printer import to_text
        return to_text(self)


@dataclass(frozen=True, repr=False)
class Top(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    pass


@dataclass(frozen=True, repr=False)
class Edge(Formula):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True, repr=False)
class Part(Formula):
    """``P_index(term)``; ``index`` is 1-based as in the DSL, naming part ``index - 1``."""

    index: int
    term: Term


@dataclass(frozen=True, repr=False)
class Dist(Formula):
    """``dist(left, right) <= radius`` in the Gaifman graph."""

    left: Term
    right: Term
    radius: int


@dataclass(frozen=True, repr=False)
class InSet(Formula):
    """Membership in a vertex-set parameter supplied with the assignment."""

    term: Term
    name: str


@dataclass(frozen=True, repr=False)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, repr=False)
class And(Formula):
    args: tuple


@dataclass(frozen=True, repr=False)
class Or(Formula):
    args: tuple


@dataclass(frozen=True, repr=False)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, repr=False)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, repr=False)
class Forall(Formula):
    var: str
    body: Formula


for _cls in (Top, Bottom, Edge, Eq, Part, Dist, InSet, Not, And, Or, Implies, Xor, Exists, Forall):
    _cls.__repr__ = lambda self: f"<{type(self).__name__} {self}>"

ATOMS = (Top, Bottom, Edge, Eq, Part, Dist, InSet)
QUANTIFIERS = (Exists, Forall)


def conj(*args: Formula) -> Formula:
    if not args:
        return Top()
    return args[0] if len(args) == 1 else And(tuple(args))


def disj(*args: Formula) -> Formula:
    if not args:
        return Bottom()
    return args[0] if len(args) == 1 else Or(tuple(args))


def exists_many(names, body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Exists(name, body)
    return body


def forall_many(names, body: Formula) -> Formula:
    for name in reversed(list(names)):
        body = Forall(name, body)
    return body


def term_vars(*terms: Term) -> set[str]:
    return {t.name for t in terms if isinstance(t, Var)}


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, (Edge, Eq, Dist)):
        return (f.left, f.right)
    if isinstance(f, (Part, InSet)):
        return (f.term,)
    return ()


def children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.body,)
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, (Implies, Xor)):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, ATOMS):
        return frozenset(term_vars(*atom_terms(f)))
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    out: frozenset = frozenset()
    for c in children(f):
        out |= free_vars(c)
    return out


def all_vars(f: Formula) -> set[str]:
    """Every variable name occurring free or bound."""
    out = set(term_vars(*atom_terms(f)))
    if isinstance(f, QUANTIFIERS):
        out.add(f.var)
    for c in children(f):
        out |= all_vars(c)
    return out


def constants(f: Formula) -> set[str]:
    out = {t.name for t in atom_terms(f) if isinstance(t, Const)}
    for c in children(f):
        out |= constants(c)
    return out


def part_indices(f: Formula) -> set[int]:
    out = {f.index} if isinstance(f, Part) else set()
    for c in children(f):
        out |= part_indices(c)
    return out


def set_params(f: Formula) -> set[str]:
    out = {f.name} if isinstance(f, InSet) else set()
    for c in children(f):
        out |= set_params(c)
    return out


def is_sentence(f: Formula) -> bool:
    return not free_vars(f)


def rebuild(f: Formula, kids: tuple) -> Formula:
    """Copy of ``f`` with its immediate subformulas replaced."""
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, And):
        return And(tuple(kids))
    if isinstance(f, Or):
        return Or(tuple(kids))
    if isinstance(f, Implies):
        return Implies(kids[0], kids[1])
    if isinstance(f, Xor):
        return Xor(kids[0], kids[1])
    if isinstance(f, Exists):
        return Exists(f.var, kids[0])
    if isinstance(f, Forall):
        return Forall(f.var, kids[0])
    return f


def fresh_name(base: str, taken: set[str]) -> str:
    name = base + "'"
    while name in taken:
        name += "'"
    return name


def _sub_term(t: Term, mapping: dict[str, Term]) -> Term:
    if isinstance(t, Var) and t.name in mapping:
        return mapping[t.name]
    return t


def _sub_atom(f: Formula, mapping: dict[str, Term]) -> Formula:
    if isinstance(f, Edge):
        return Edge(_sub_term(f.left, mapping), _sub_term(f.right, mapping))
    if isinstance(f, Eq):
        return Eq(_sub_term(f.left, mapping), _sub_term(f.right, mapping))
    if isinstance(f, Dist):
        return Dist(_sub_term(f.left, mapping), _sub_term(f.right, mapping), f.radius)
    if isinstance(f, Part):
        return Part(f.index, _sub_term(f.term, mapping))
    if isinstance(f, InSet):
        return InSet(_sub_term(f.term, mapping), f.name)
    return f


def substitute(f: Formula, mapping: dict[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    mapping = {k: v for k, v in mapping.items() if k in free_vars(f)}
    if not mapping:
        return f
    if isinstance(f, ATOMS):
        return _sub_atom(f, mapping)
    if isinstance(f, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        incoming = set()
        for t in inner.values():
            incoming |= term_vars(t)
        var, body = f.var, f.body
        if var in incoming:
            new = fresh_name(var, incoming | all_vars(body) | set(inner))
            body = substitute(body, {var: Var(new)})
            var = new
        return type(f)(var, substitute(body, inner))
    return rebuild(f, tuple(substitute(c, mapping) for c in children(f)))


def rename_bound(f: Formula, avoid: set[str]) -> Formula:
    """Alpha-rename bound variables whose names are in ``avoid``."""
    if isinstance(f, QUANTIFIERS):
        var, body = f.var, f.body
        if var in avoid:
            new = fresh_name(var, avoid | all_vars(body))
            body = substitute(body, {var: Var(new)})
            var = new
        return type(f)(var, rename_bound(body, avoid))
    if isinstance(f, ATOMS):
        return f
    return rebuild(f, tuple(rename_bound(c, avoid) for c in children(f)))


def quantifier_rank(f: Formula) -> int:
    """Quantifier nesting depth; a distance atom ``dist <= r`` counts as rank ``r``."""
    if isinstance(f, Dist):
        return f.radius
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, QUANTIFIERS):
        return 1 + quantifier_rank(f.body)
    return max((quantifier_rank(c) for c in children(f)), default=0)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in children(f))
