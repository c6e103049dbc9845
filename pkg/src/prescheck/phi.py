"""The order-encoding sentence, its hybrid model checker, minimality and fuzzing."""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .constructions import GADGET_ROLES, build_H, build_gadget, gadget_tuple
from .embedding import find_embeddings, random_extension, random_graph
from .graph import Graph, bits, induced_subgraph, mask_of
from .logic.evaluate import Evaluator
from .logic.parser import Definitions, parse_formula
from .logic.syntax import Exists, Formula, Implies, conj, exists_many
from .logic.transforms import diagram

U_GUARD = "E(x, v1) and x != v2"
# complement of U minus {a, b}: this keeps v2 among the V-elements
V_GUARD = "not (E(x, v1) and x != v2) and x != a and x != b"
# the shorthand read literally: non-neighbours of v1 only
V_GUARD_LITERAL = "not E(x, v1) and x != a and x != b"

PARTS_TEXT = {
    "chi1": "forall x in V. forall y in V. leqV(x, y) or leqV(y, x)",
    "chi2": "forall x in U. E(x, v6) implies x = u6",
    "chi3": "forall x in V. forall y in V. ltV(x, y) and E(x, y) implies "
            "(exists! z in U. E(y, z) and not E(x, z))",
    "xi1": "forall x in U. forall y in U. leqU(x, y) or leqU(y, x)",
    "xi2": "forall x in V. E(x, u1) implies x = v1",
    "xi2s": "forall x in V. E(x, u6)",
    "xi3": "forall x in U. forall y in U. ltU(x, y) and not E(x, y) implies "
           "(exists! z in V. E(y, z) and not E(x, z))",
    "phi2": "forall x in V. x != v1 implies (exists y in V. E(x, y) and ltV(x, y))",
    "psi2": "forall x in U. x != u6 implies (exists y in U. not E(x, y) and ltU(x, y))",
}


class NotAModel(ValueError):
    pass


def phi_definitions(literal_v: bool = False, unique_guard_both: bool = True) -> Definitions:
    defs = Definitions(unique_guard_both=unique_guard_both)
    defs.guards["U"] = ("x", parse_formula(U_GUARD))
    defs.guards["V"] = ("x", parse_formula(V_GUARD_LITERAL if literal_v else V_GUARD))
    defs.predicates["leqV"] = (("x", "y"), parse_formula("forall z in U. E(z, x) implies E(z, y)", defs))
    defs.predicates["leqU"] = (("x", "y"), parse_formula("forall z in V. E(z, x) implies E(z, y)", defs))
    defs.predicates["ltV"] = (("x", "y"), parse_formula("leqV(x, y) and not leqV(y, x)", defs))
    defs.predicates["ltU"] = (("x", "y"), parse_formula("leqU(x, y) and not leqU(y, x)", defs))
    return defs


@dataclass(frozen=True)
class PhiParts:
    gadget: Formula
    phi1: Formula
    psi1: Formula
    phi2: Formula
    psi2: Formula
    named: dict

    @property
    def body(self) -> Formula:
        return Implies(conj(self.phi1, self.psi1), conj(self.phi2, self.psi2))


@lru_cache(maxsize=None)
def phi_parts(literal_v: bool = False, unique_guard_both: bool = True) -> PhiParts:
    defs = phi_definitions(literal_v, unique_guard_both)
    named = {k: parse_formula(t, defs) for k, t in PARTS_TEXT.items()}
    _, gadget = diagram(build_gadget().graph, list(GADGET_ROLES))
    return PhiParts(
        gadget=gadget,
        phi1=conj(named["chi1"], named["chi2"], named["chi3"]),
        psi1=conj(named["xi1"], named["xi2"], named["xi2s"], named["xi3"]),
        phi2=named["phi2"],
        psi2=named["psi2"],
        named=named,
    )


def build_phi(literal_v: bool = False, unique_guard_both: bool = True) -> Formula:
    p = phi_parts(literal_v, unique_guard_both)
    return exists_many(GADGET_ROLES, conj(p.gadget, p.body))


@dataclass
class PhiWitness:
    tuple: tuple
    U: frozenset
    V: frozenset
    verdicts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "tuple": dict(zip(GADGET_ROLES, self.tuple)),
            "U": sorted(self.U),
            "V": sorted(self.V),
            "verdicts": dict(self.verdicts),
        }


def role_sets(G: Graph, tup, literal_v: bool = False) -> tuple[frozenset, frozenset]:
    r = dict(zip(GADGET_ROLES, tup))
    U = frozenset(w for w in bits(G.adj[r["v1"]]) if w != r["v2"])
    if literal_v:
        nonadj = [w for w in G.vertices if not G.has_edge(w, r["v1"])]
        V = frozenset(w for w in nonadj if w not in (r["a"], r["b"]))
    else:
        V = frozenset(w for w in G.vertices if w not in U and w not in (r["a"], r["b"]))
    return U, V


def _witness(ev: Evaluator, G: Graph, tup, parts: PhiParts, literal_v: bool) -> PhiWitness:
    U, V = role_sets(G, tup, literal_v)
    verdicts = {}
    for name in ("phi1", "psi1", "phi2", "psi2"):
        verdicts[name] = ev.compile(getattr(parts, name), GADGET_ROLES)(tup)
    return PhiWitness(tuple(tup), U, V, verdicts)


def check_phi(G: Graph, literal_v: bool = False, unique_guard_both: bool = True,
              all_witnesses: bool = False):
    """Hybrid check: gadget embeddings first, then the implication per tuple.

    Returns ``(verdict, witness)``; with ``all_witnesses`` the second item is the
    list of every satisfying tuple's witness.
    """
    parts = phi_parts(literal_v, unique_guard_both)
    gadget = build_gadget().graph
    ev = Evaluator(G)
    body = ev.compile(parts.body, GADGET_ROLES)
    found = []
    first = None
    for emb in find_embeddings(gadget, G):
        tup = emb.images
        if first is None:
            first = tup
        if body(tup):
            found.append(_witness(ev, G, tup, parts, literal_v))
            if not all_witnesses:
                return True, found[0]
    if all_witnesses:
        return bool(found), found
    # for a refutation, report the first tuple's verdicts (if any tuple exists)
    return False, (_witness(ev, G, first, parts, literal_v) if first is not None else None)


def models_phi(G: Graph, **kw) -> bool:
    return check_phi(G, **kw)[0]


def check_minimal(G: Graph, mode: str = "vertex-deletion", threads: int = 1, **kw) -> bool:
    """Minimality among induced subgraphs.

    Vertex deletion suffices because the sentence is preserved by extensions:
    a smaller induced model would extend, inside G, to some one-vertex-deleted
    subgraph, which would then model it too.
    """
    if not models_phi(G, **kw):
        raise NotAModel("the graph does not satisfy the sentence")
    if mode == "vertex-deletion":
        subsets = [[w for w in G.vertices if w != v] for v in G.vertices]
    elif mode == "full-enumeration":
        subsets = [sorted(s) for s in gadget_supersets(G)]
    else:
        raise ValueError(f"unknown mode {mode!r}")

    def holds(S) -> bool:
        return models_phi(induced_subgraph(G, S)[0], **kw)

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        return not any(pool.map(holds, subsets))


def gadget_supersets(G: Graph) -> list[frozenset]:
    """Proper vertex subsets of ``G`` containing the image of some gadget embedding."""
    everything = frozenset(G.vertices)
    images = {frozenset(e.images) for e in find_embeddings(build_gadget().graph, G)}
    out = set()
    for img in images:
        rest = sorted(everything - img)
        for r in range(len(rest)):
            for extra in combinations(rest, r):
                out.add(img | frozenset(extra))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


@dataclass
class ChainCertificate:
    alpha: list
    beta: list
    alpha_sizes: list
    beta_sizes: list
    ok: bool

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "alpha_sizes": self.alpha_sizes,
                "beta_sizes": self.beta_sizes, "ok": self.ok}


def chain_certificate(G: Graph, witness: PhiWitness) -> ChainCertificate:
    """Follow successor chains from v6 to v1 (adjacent) and u1 to u6 (non-adjacent).

    Each step goes to the unique element with a neighbourhood one larger.
    """
    r = dict(zip(GADGET_ROLES, witness.tuple))
    U, V = witness.U, witness.V
    nbV = {x: mask_of(U) & G.adj[x] for x in V}
    nbU = {x: mask_of(V) & G.adj[x] for x in U}

    def walk(start, end, pool, nb, want_edge):
        chain = [start]
        while chain[-1] != end:
            x = chain[-1]
            nxt = [y for y in sorted(pool) if y not in chain and G.has_edge(x, y) == want_edge
                   and nb[x] & ~nb[y] == 0 and (nb[y] & ~nb[x]).bit_count() == 1]
            if len(nxt) != 1:
                return chain, False
            chain.append(nxt[0])
        return chain, True

    alpha, ok_a = walk(r["v6"], r["v1"], V, nbV, True)
    beta, ok_b = walk(r["u1"], r["u6"], U, nbU, False)
    a_sizes = [nbV[x].bit_count() for x in alpha]
    b_sizes = [nbU[x].bit_count() for x in beta]
    ok = (ok_a and ok_b and set(alpha) == set(V) and set(beta) == set(U)
          and a_sizes[0] == 1 and b_sizes[0] == 1 and len(alpha) == len(beta))
    return ChainCertificate(alpha, beta, a_sizes, b_sizes, ok)


# --- fuzzing ----------------------------------------------------------------

def fuzz_bases(sizes=(7, 8, 9, 10)) -> list[tuple[str, Graph]]:
    bases = [(f"H_{n}", build_H(n).graph) for n in sizes]
    bases.append(("gadget", build_gadget().graph))
    H7 = build_H(7).graph
    inner = [v for v in H7.vertices if v not in gadget_tuple(7)]
    bases.append(("H_7-minus-inner", induced_subgraph(H7, [v for v in H7.vertices if v != inner[0]])[0]))
    return bases


def preservation_fuzz(trials: int, sizes=(7, 8, 9, 10), seed: int = 0, max_extra: int = 4,
                      random_bases: int = 0, hn_only: bool = False) -> dict:
    """Random pairs G <= H; a violation is G satisfying the sentence while H does not."""
    rng = random.Random(seed)
    bases = fuzz_bases(sizes)
    if hn_only:
        bases = bases[:len(sizes)]
    for i in range(random_bases):
        bases.append((f"random-{i}", random_graph(rng.randint(4, 12), rng.random(), rng)))
    base_sat = {name: models_phi(G) for name, G in bases}
    violations = []
    stats = {"pairs": 0, "G_models": 0, "H_models": 0}
    per_base = {name: 0 for name, _ in bases}
    for t in range(trials):
        name, G = bases[t % len(bases)] if t < len(bases) else rng.choice(bases)
        extra = rng.randint(1, max_extra)
        density = round(rng.random(), 3)
        ext_seed = rng.getrandbits(32)
        H, _ = random_extension(G, extra, density, ext_seed)
        g_ok, h_ok = base_sat[name], models_phi(H)
        stats["pairs"] += 1
        stats["G_models"] += g_ok
        stats["H_models"] += h_ok
        per_base[name] += 1
        if g_ok and not h_ok:
            violations.append({"base": name, "extra": extra, "density": density, "seed": ext_seed})
    return {
        "trials": trials,
        "seed": seed,
        "sizes": list(sizes),
        "bases": per_base,
        "base_models": base_sat,
        "stats": stats,
        "violations": violations,
    }


def direct_check_phi(G: Graph, **kw) -> bool:
    """Evaluate the whole sentence with the compiled evaluator (no embedding search)."""
    return Evaluator(G).evaluate(build_phi(**kw))


def phi_outer_vars(f: Formula) -> list[str]:
    out = []
    while isinstance(f, Exists):
        out.append(f.var)
        f = f.body
    return out
