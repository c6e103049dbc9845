import random
import time

import pytest

from helpers import rand_graph
from prescheck.constructions import GADGET_ROLES, build_gadget, build_H, gadget_tuple, h_names
from prescheck.embedding import random_extension
from prescheck.graph import Graph, induced_subgraph
from prescheck.logic import parse_formula, quantifier_rank, to_text
from prescheck.logic.syntax import Eq, Exists, Forall, Implies, Var, free_vars
from prescheck.phi import (
    NotAModel, build_phi, chain_certificate, check_minimal, check_phi, direct_check_phi,
    gadget_supersets, phi_outer_vars, phi_parts, preservation_fuzz, role_sets,
)


def test_sentence_shape():
    phi = build_phi()
    assert not free_vars(phi)
    assert phi_outer_vars(phi) == list(GADGET_ROLES)
    assert to_text(parse_formula(to_text(phi))) == to_text(phi)


def _nodes(f):
    from prescheck.logic.syntax import children
    yield f
    for c in children(f):
        yield from _nodes(c)


def test_unique_quantifier_in_chi3():
    chi3 = phi_parts().named["chi3"]
    uniq = [f for f in _nodes(chi3) if isinstance(f, Exists) and f.var == "z"]
    assert len(uniq) == 1
    inner = [f for f in _nodes(uniq[0].body) if isinstance(f, Forall)]
    # the uniqueness clause: forall z'. theta(z') implies z' = z
    assert any(f.var == "z'" and isinstance(f.body, Implies)
               and f.body.right == Eq(Var("z'"), Var("z")) for f in inner)
    assert quantifier_rank(chi3) == 4


def test_parts_rank():
    p = phi_parts()
    for name in ("chi1", "xi1"):
        assert quantifier_rank(p.named[name]) == 3
    assert isinstance(p.named["chi2"], Forall)


@pytest.mark.parametrize("n", [7, 8, 9, 10])
def test_h_n_models_phi_with_the_inclusion_witness(n):
    ok, witnesses = check_phi(build_H(n).graph, all_witnesses=True)
    assert ok and len(witnesses) == 1
    w = witnesses[0]
    assert w.tuple == gadget_tuple(n)
    nm = h_names(n)
    assert w.U == {nm[f"u{i}"] for i in range(1, n + 1)}
    assert w.V == {nm[f"v{i}"] for i in range(1, n + 1)}
    assert all(w.verdicts.values())


@pytest.mark.parametrize("n", [7, 8, 9, 10])
def test_chain_certificate(n):
    G = build_H(n).graph
    _, w = check_phi(G)
    cert = chain_certificate(G, w)
    nm = h_names(n)
    assert cert.ok
    assert cert.alpha == [nm[f"v{i}"] for i in range(n, 0, -1)]
    assert cert.beta == [nm[f"u{i}"] for i in range(1, n + 1)]
    assert cert.alpha_sizes == list(range(1, n + 1)) == cert.beta_sizes


def test_non_models():
    ok, w = check_phi(build_gadget().graph)
    assert not ok and not (w.verdicts["phi2"] and w.verdicts["psi2"])
    assert check_phi(Graph.complete(5)) == (False, None)


def test_readings():
    G = build_H(7).graph
    assert not check_phi(G, literal_v=True)[0]
    assert check_phi(G, unique_guard_both=False)[0]
    U, V = role_sets(G, gadget_tuple(7), literal_v=True)
    assert len(V) == 6


def test_hybrid_agrees_with_direct_evaluation():
    rng = random.Random(8)
    samples = [build_H(7).graph, build_H(8).graph, build_gadget().graph]
    for t in range(12):
        base = rng.choice([build_H(7).graph, build_gadget().graph])
        H, _ = random_extension(base, rng.randint(1, 18 - base.order), rng.random(), t)
        samples.append(H)
        samples.append(rand_graph(rng, rng.randint(10, 16)))
    for G in samples:
        assert check_phi(G)[0] == direct_check_phi(G)
    G = build_H(7).graph
    assert direct_check_phi(G, literal_v=True) == check_phi(G, literal_v=True)[0]


def test_minimality():
    t = time.perf_counter()
    assert check_minimal(build_H(7).graph)
    assert time.perf_counter() - t < 60
    assert check_minimal(build_H(7).graph, mode="full-enumeration", threads=2)
    bigger = Graph(17, list(build_H(7).graph.adj) + [0])
    assert not check_minimal(bigger)
    with pytest.raises(NotAModel):
        check_minimal(build_gadget().graph)
    with pytest.raises(ValueError):
        check_minimal(build_H(7).graph, mode="nope")


def test_gadget_supersets_of_h7():
    sets = gadget_supersets(build_H(7).graph)
    assert len(sets) == 3
    assert all(s >= set(gadget_tuple(7)) and len(s) < 16 for s in sets)


def test_deleting_any_vertex_breaks_the_model():
    G = build_H(7).graph
    for v in G.vertices:
        assert not check_phi(induced_subgraph(G, [w for w in G.vertices if w != v])[0])[0]


def test_fuzz_is_deterministic_and_clean():
    a = preservation_fuzz(40, seed=5, hn_only=True)
    b = preservation_fuzz(40, seed=5, hn_only=True)
    assert a == b
    assert a["violations"] == [] and a["stats"]["pairs"] == 40
    mixed = preservation_fuzz(30, seed=6, random_bases=2)
    assert mixed["violations"] == []


def test_outer_vars_stop_at_body():
    assert phi_outer_vars(Exists("x", Exists("y", parse_formula("E(x, y)")))) == ["x", "y"]
