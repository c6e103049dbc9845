"""Two independent evaluators for first-order formulas on labelled graphs.

:func:`evaluate_reference` is plain recursion over assignments and is kept
deliberately naive. :class:`Evaluator` compiles a formula into nested closures
after miniscoping it (conjuncts that do not mention a quantified variable are
hoisted out of the quantifier), and draws quantifier ranges from the guard
atoms of the quantified conjunction. Both must agree on every query.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..graph import Graph, LabeledStructure, bits, distances_from
from .syntax import (
    ATOMS, And, Bottom, Const, Dist, Edge, Eq, Exists, Forall, Formula, Implies, InSet, Not, Or,
    Part, Top, Var, Xor, free_vars,
)

INF = 1 << 30


class EvaluationError(ValueError):
    pass


@dataclass
class Assignment:
    """Values for free variables, extra constants and vertex-set parameters."""

    values: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    sets: dict = field(default_factory=dict)


def _as_structure(S) -> LabeledStructure:
    return S if isinstance(S, LabeledStructure) else LabeledStructure(S)


def _as_assignment(a) -> Assignment:
    if a is None:
        return Assignment()
    if isinstance(a, Assignment):
        return a
    return Assignment(values=dict(a))


# --- reference evaluator ---------------------------------------------------

def evaluate_reference(S, formula: Formula, assignment=None) -> bool:
    """Classical semantics by direct recursion; no caching or reordering."""
    S = _as_structure(S)
    a = _as_assignment(assignment)
    return _ref(S, formula, dict(a.values), a)


def _ref_term(S: LabeledStructure, t, env: dict, a: Assignment) -> int:
    if isinstance(t, Var):
        if t.name not in env:
            raise EvaluationError(f"unbound variable {t.name}")
        return env[t.name]
    if t.name in a.constants:
        return a.constants[t.name]
    if t.name in S.constants:
        return S.constants[t.name]
    raise EvaluationError(f"unknown constant @{t.name}")


def _ref(S: LabeledStructure, f: Formula, env: dict, a: Assignment) -> bool:
    G = S.graph
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Edge):
        return G.has_edge(_ref_term(S, f.left, env, a), _ref_term(S, f.right, env, a))
    if isinstance(f, Eq):
        return _ref_term(S, f.left, env, a) == _ref_term(S, f.right, env, a)
    if isinstance(f, Part):
        v = _ref_term(S, f.term, env, a)
        if S.parts is None or not 1 <= f.index <= S.parts.k:
            raise EvaluationError(f"part predicate P_{f.index} not interpreted by the structure")
        return S.parts.part_of[v] == f.index - 1
    if isinstance(f, Dist):
        u = _ref_term(S, f.left, env, a)
        v = _ref_term(S, f.right, env, a)
        return distances_from(G, u)[v] <= f.radius
    if isinstance(f, InSet):
        if f.name not in a.sets:
            raise EvaluationError(f"unbound set parameter ${f.name}")
        return _ref_term(S, f.term, env, a) in a.sets[f.name]
    if isinstance(f, Not):
        return not _ref(S, f.body, env, a)
    if isinstance(f, And):
        return all(_ref(S, g, env, a) for g in f.args)
    if isinstance(f, Or):
        return any(_ref(S, g, env, a) for g in f.args)
    if isinstance(f, Implies):
        return (not _ref(S, f.left, env, a)) or _ref(S, f.right, env, a)
    if isinstance(f, Xor):
        return _ref(S, f.left, env, a) != _ref(S, f.right, env, a)
    if isinstance(f, Exists):
        return any(_ref(S, f.body, {**env, f.var: v}, a) for v in G.vertices)
    if isinstance(f, Forall):
        return all(_ref(S, f.body, {**env, f.var: v}, a) for v in G.vertices)
    raise EvaluationError(f"unknown formula node {type(f).__name__}")


# --- optimised evaluator ---------------------------------------------------

def _conjuncts(f: Formula) -> list:
    if isinstance(f, And):
        out = []
        for g in f.args:
            out.extend(_conjuncts(g))
        return out
    if isinstance(f, Top):
        return []
    return [f]


def _negate(f: Formula) -> Formula:
    """Negation pushed one level so that a conjunction is exposed where possible."""
    if isinstance(f, Not):
        return f.body
    if isinstance(f, Implies):
        return _and(_conjuncts(f.left) + _conjuncts(_negate(f.right)))
    if isinstance(f, Or):
        parts = []
        for g in f.args:
            parts.extend(_conjuncts(_negate(g)))
        return _and(parts)
    if isinstance(f, Top):
        return Bottom()
    if isinstance(f, Bottom):
        return Top()
    return Not(f)


def _and(parts: list) -> Formula:
    if not parts:
        return Top()
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def normalize(f: Formula) -> Formula:
    """Miniscoped form used by the compiler; logically equivalent to ``f``.

    ``forall x. b`` becomes ``not exists x. not b``; in ``exists x. c1 and ..``
    conjuncts without ``x`` free move in front of the quantifier.
    """
    if isinstance(f, ATOMS):
        return f
    if isinstance(f, Not):
        return Not(normalize(f.body))
    if isinstance(f, And):
        return _and([normalize(g) for g in f.args])
    if isinstance(f, Or):
        return Or(tuple(normalize(g) for g in f.args))
    if isinstance(f, Implies):
        return Implies(normalize(f.left), normalize(f.right))
    if isinstance(f, Xor):
        return Xor(normalize(f.left), normalize(f.right))
    if isinstance(f, Forall):
        return Not(_miniscope(f.var, _negate(normalize(f.body))))
    if isinstance(f, Exists):
        return _miniscope(f.var, normalize(f.body))
    raise EvaluationError(f"unknown formula node {type(f).__name__}")


def _miniscope(var: str, body: Formula) -> Formula:
    parts = _conjuncts(body)
    if any(isinstance(p, Bottom) for p in parts):
        return Bottom()
    outer = [p for p in parts if var not in free_vars(p)]
    inner = [p for p in parts if var in free_vars(p)]
    quant = Exists(var, _and(inner))
    return _and(outer + [quant]) if outer else quant


class Evaluator:
    """Compiling evaluator bound to one structure.

    Distance rows and ball masks are cached for the lifetime of the evaluator,
    so an instance should not be shared between threads; create one per
    evaluation session.
    """

    def __init__(self, S):
        self.S = _as_structure(S)
        self.G: Graph = self.S.graph
        self._dist: list | None = None
        self._balls: dict = {}
        self._compiled: dict = {}

    # cached geometry
    def dist_matrix(self) -> list:
        if self._dist is None:
            rows = []
            for v in self.G.vertices:
                rows.append([INF if d == float("inf") else int(d) for d in distances_from(self.G, v)])
            self._dist = rows
        return self._dist

    def ball_mask(self, v: int, r: int) -> int:
        key = (v, r)
        m = self._balls.get(key)
        if m is None:
            row = self.dist_matrix()[v]
            m = 0
            for w, d in enumerate(row):
                if d <= r:
                    m |= 1 << w
            self._balls[key] = m
        return m

    def evaluate(self, formula: Formula, assignment=None) -> bool:
        a = _as_assignment(assignment)
        names = tuple(sorted(a.values))
        missing = free_vars(formula) - set(names)
        if missing:
            raise EvaluationError(f"unbound variables {sorted(missing)}")
        fn = self.compile(formula, names, a.constants, a.sets)
        return fn(tuple(a.values[n] for n in names))

    def compile(self, formula: Formula, free: tuple = (), constants=None, sets=None):
        """Compile to a callable taking the values of ``free`` (in order)."""
        constants = dict(constants or {})
        sets = {k: (s if isinstance(s, int) else _mask(s)) for k, s in (sets or {}).items()}
        key = (formula, free, tuple(sorted(constants.items())), tuple(sorted(sets.items())))
        hit = self._compiled.get(key)
        if hit is not None:
            return hit
        norm = normalize(formula)
        width = len(free) + _depth(norm)
        slots = {name: i for i, name in enumerate(free)}
        body = _Compiler(self, constants, sets, width).build(norm, slots, len(free))
        nfree = len(free)

        def run(values) -> bool:
            env = list(values) + [0] * (width - nfree)
            return body(env)

        self._compiled[key] = run
        return run


def _mask(s) -> int:
    m = 0
    for v in s:
        m |= 1 << v
    return m


def _depth(f: Formula) -> int:
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, (Exists, Forall)):
        return 1 + _depth(f.body)
    kids = f.args if isinstance(f, (And, Or)) else (
        (f.body,) if isinstance(f, Not) else (f.left, f.right))
    return max((_depth(k) for k in kids), default=0)


class _Compiler:
    def __init__(self, ev: Evaluator, constants: dict, sets: dict, width: int):
        self.ev = ev
        self.G = ev.G
        self.constants = constants
        self.sets = sets
        self.width = width

    def const(self, name: str) -> int:
        if name in self.constants:
            return self.constants[name]
        if name in self.ev.S.constants:
            return self.ev.S.constants[name]
        raise EvaluationError(f"unknown constant @{name}")

    def term(self, t, slots: dict):
        """Return ("c", vertex) or ("s", slot index)."""
        if isinstance(t, Const):
            return ("c", self.const(t.name))
        if t.name not in slots:
            raise EvaluationError(f"unbound variable {t.name}")
        return ("s", slots[t.name])

    def part_mask(self, index: int) -> int:
        P = self.ev.S.parts
        if P is None or not 1 <= index <= P.k:
            raise EvaluationError(f"part predicate P_{index} not interpreted by the structure")
        return P.masks()[index - 1]

    def set_mask(self, name: str) -> int:
        if name not in self.sets:
            raise EvaluationError(f"unbound set parameter ${name}")
        return self.sets[name]

    def build(self, f: Formula, slots: dict, depth: int):
        adj = self.G.adj
        if isinstance(f, Top):
            return lambda env: True
        if isinstance(f, Bottom):
            return lambda env: False
        if isinstance(f, (Edge, Eq, Dist)):
            (ka, a), (kb, b) = self.term(f.left, slots), self.term(f.right, slots)
            if isinstance(f, Edge):
                if ka == "c" and kb == "c":
                    val = bool(adj[a] >> b & 1)
                    return lambda env: val
                if ka == "c":
                    row = adj[a]
                    return lambda env: row >> env[b] & 1 == 1
                if kb == "c":
                    row = adj[b]
                    return lambda env: row >> env[a] & 1 == 1
                return lambda env: adj[env[a]] >> env[b] & 1 == 1
            if isinstance(f, Eq):
                if ka == "c" and kb == "c":
                    val = a == b
                    return lambda env: val
                if ka == "c":
                    return lambda env: env[b] == a
                if kb == "c":
                    return lambda env: env[a] == b
                return lambda env: env[a] == env[b]
            D = self.ev.dist_matrix()
            r = f.radius
            if ka == "c" and kb == "c":
                val = D[a][b] <= r
                return lambda env: val
            if ka == "c":
                row = D[a]
                return lambda env: row[env[b]] <= r
            if kb == "c":
                row = D[b]
                return lambda env: row[env[a]] <= r
            return lambda env: D[env[a]][env[b]] <= r
        if isinstance(f, (Part, InSet)):
            mask = self.part_mask(f.index) if isinstance(f, Part) else self.set_mask(f.name)
            k, t = self.term(f.term, slots)
            if k == "c":
                val = bool(mask >> t & 1)
                return lambda env: val
            return lambda env: mask >> env[t] & 1 == 1
        if isinstance(f, Not):
            g = self.build(f.body, slots, depth)
            return lambda env: not g(env)
        if isinstance(f, (And, Or)):
            gs = tuple(self.build(g, slots, depth) for g in _cheap_first(f.args))
            if isinstance(f, And):
                def conj(env, gs=gs):
                    for g in gs:
                        if not g(env):
                            return False
                    return True
                return conj

            def disj(env, gs=gs):
                for g in gs:
                    if g(env):
                        return True
                return False
            return disj
        if isinstance(f, Implies):
            a, b = self.build(f.left, slots, depth), self.build(f.right, slots, depth)
            return lambda env: (not a(env)) or b(env)
        if isinstance(f, Xor):
            a, b = self.build(f.left, slots, depth), self.build(f.right, slots, depth)
            return lambda env: a(env) != b(env)
        if isinstance(f, Exists):
            return self.build_exists(f, slots, depth)
        if isinstance(f, Forall):
            # normalize() removes universals; kept for direct callers
            return self.build(Not(Exists(f.var, _negate(f.body))), slots, depth)
        raise EvaluationError(f"unknown formula node {type(f).__name__}")

    def build_exists(self, f: Exists, slots: dict, depth: int):
        slot = depth
        inner = dict(slots)
        inner[f.var] = slot
        static = (1 << self.G.order) - 1
        dynamic = []  # callables env -> mask
        rest = []
        for c in _conjuncts(f.body):
            gen = self.generator(c, f.var, inner, slot)
            if gen is None:
                rest.append(c)
            elif isinstance(gen, int):
                static &= gen
            else:
                dynamic.append(gen)
        body = self.build(_and(rest), inner, depth + 1)
        static_list = list(bits(static))

        if not dynamic:
            def ex(env):
                for v in static_list:
                    env[slot] = v
                    if body(env):
                        return True
                return False
            return ex

        def ex_dyn(env):
            m = static
            for d in dynamic:
                m &= d(env)
                if not m:
                    return False
            while m:
                low = m & -m
                env[slot] = low.bit_length() - 1
                if body(env):
                    return True
                m ^= low
            return False
        return ex_dyn

    def generator(self, c: Formula, var: str, slots: dict, slot: int):
        """If ``c`` restricts ``var`` to a computable set, return that set's mask.

        Returns an int for masks fixed at compile time, a callable for masks
        depending on outer variables, or None.
        """
        def other(t):
            if isinstance(t, Var) and t.name == var:
                return None
            return self.term(t, slots)

        def is_var(t):
            return isinstance(t, Var) and t.name == var

        adj = self.G.adj
        if isinstance(c, (Edge, Eq, Dist)):
            if is_var(c.left) and not is_var(c.right):
                k, x = other(c.right)
            elif is_var(c.right) and not is_var(c.left):
                k, x = other(c.left)
            else:
                return None
            if isinstance(c, Edge):
                return adj[x] if k == "c" else (lambda env: adj[env[x]])
            if isinstance(c, Eq):
                return 1 << x if k == "c" else (lambda env: 1 << env[x])
            r = c.radius
            if k == "c":
                return self.ev.ball_mask(x, r)
            ev = self.ev
            return lambda env: ev.ball_mask(env[x], r)
        if isinstance(c, Part) and is_var(c.term):
            return self.part_mask(c.index)
        if isinstance(c, InSet) and is_var(c.term):
            return self.set_mask(c.name)
        return None


def _cheap_first(args) -> list:
    atoms = [a for a in args if isinstance(a, ATOMS) or (isinstance(a, Not) and isinstance(a.body, ATOMS))]
    others = [a for a in args if a not in atoms]
    return atoms + others


def evaluate(S, formula: Formula, assignment=None) -> bool:
    """Evaluate with the optimised evaluator (fresh session per call)."""
    return Evaluator(S).evaluate(formula, assignment)
