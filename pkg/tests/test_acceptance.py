"""The ten acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import random
import time

from helpers import rand_flip, rand_graph, rand_partition, report, sentence_pool
from prescheck.cliquewidth import eval_clique_expression, hn_clique_expression
from prescheck.constructions import (
    build_gadget, build_gadget_prime, build_H, dd_flip, dd_threshold,
)
from prescheck.embedding import count_embeddings
from prescheck.flip import (
    bottleneck_cover, signature_type_oracle, theorem_constants, verify_cover, verify_flat_witness,
)
from prescheck.graph import (
    Flip, Graph, apply_flip, disjoint_union, expand, flip_sum, greedy_independent_set,
    induced_subgraph, is_isomorphic,
)
from prescheck.logic import evaluate, translate_flip
from prescheck.phi import check_minimal, check_phi, preservation_fuzz
from prescheck.sctree import double_sc_tree, eval_sc_tree, random_internal_path, random_sc_tree


def test_criterion_01_h_n_models_phi():
    rows = []
    for n in (7, 8, 9, 10):
        t = time.perf_counter()
        ok, _ = check_phi(build_H(n).graph)
        rows.append((n, ok, time.perf_counter() - t))
    good = all(ok and dt < 30 for _, ok, dt in rows)
    report(1, good, "check_phi(H_n): " + ", ".join(f"n={n} {ok} {dt:.2f}s" for n, ok, dt in rows))
    assert good


def test_criterion_02_minimality():
    t = time.perf_counter()
    vd7 = check_minimal(build_H(7).graph)
    t_vd = time.perf_counter() - t
    t = time.perf_counter()
    full7 = check_minimal(build_H(7).graph, mode="full-enumeration")
    t_full = time.perf_counter() - t
    rest = {n: check_minimal(build_H(n).graph) for n in (8, 9, 10)}
    good = vd7 and t_vd < 60 and full7 and t_full < 300 and all(rest.values())
    report(2, good, f"H_7 deletion {vd7} {t_vd:.2f}s, full {full7} {t_full:.2f}s, "
                    f"n=8..10 {list(rest.values())}")
    assert good


def test_criterion_03_embedding_counts():
    counts = {n: (count_embeddings(build_gadget_prime().graph, build_H(n).graph),
                  count_embeddings(build_gadget().graph, build_H(n).graph)) for n in range(7, 11)}
    good = all(c == (2, 1) for c in counts.values())
    report(3, good, f"(I' -> H_n, I -> H_n) counts {counts}")
    assert good


def test_criterion_04_preservation_fuzz():
    res = preservation_fuzz(1000, seed=2024, hn_only=True)
    pairs, bad = res["stats"]["pairs"], len(res["violations"])
    good = pairs >= 1000 and bad == 0 and set(res["bases"]) == {"H_7", "H_8", "H_9", "H_10"}
    report(4, good, f"{pairs} pairs over H_7..H_10, {bad} violations, "
                    f"{res['stats']['H_models']} extensions model phi")
    assert good


def test_criterion_05_flip_algebra():
    rng = random.Random(55)
    laws = 0
    for _ in range(10_000):
        G = rand_graph(rng, rng.randint(0, 12))
        k = rng.randint(1, 4)
        P, F = rand_partition(rng, G.order, k), rand_flip(rng, k)
        laws += (apply_flip(apply_flip(G, P, F), P, F) != G
                 or apply_flip(G, P, Flip(k)) != G
                 or flip_sum(G, P, Flip(k)) != disjoint_union(G, G))
    obs = 0
    for _ in range(2_000):
        G = rand_graph(rng, rng.randint(0, 12))
        k = rng.randint(1, 4)
        P, F = rand_partition(rng, G.order, k), rand_flip(rng, k)
        S = [v for v in G.vertices if rng.random() < 0.5]
        obs += (induced_subgraph(apply_flip(G, P, F), S)[0]
                != apply_flip(induced_subgraph(G, S)[0], P.restrict(S), F))
    pool = sentence_pool(7, 60, rank=3)
    equiv = 0
    for _ in range(1_000):
        G = rand_graph(rng, rng.randint(1, 7))
        k = rng.randint(1, 3)
        P, F = rand_partition(rng, G.order, k), rand_flip(rng, k)
        phi = rng.choice(pool)
        equiv += evaluate(G, phi) != evaluate(expand(G, P, F), translate_flip(phi, k, F))
    good = laws == 0 and obs == 0 and equiv == 0
    report(5, good, f"law failures {laws}/10000, indsub {obs}/2000, phi^k {equiv}/1000")
    assert good


def test_criterion_06_covering():
    rng = random.Random(66)
    failures = 0
    for _ in range(200):
        G = rand_graph(rng, rng.randint(1, 40), rng.choice([0.03, 0.06, 0.1, 0.2]))
        d, n = rng.randint(1, 2), rng.randint(1, 4)
        cert = bottleneck_cover(G, signature_type_oracle(1, d), d, n)
        ok = (len(cert.D) <= max(n - 1, 0) * cert.p and cert.e <= 2 * d * cert.p
              and not verify_cover(G, cert))
        failures += not ok
    report(6, failures == 0, f"{failures} failing certificates out of 200")
    assert failures == 0


def test_criterion_07_sc_doubling():
    rng = random.Random(77)
    bad = 0
    for t in range(100):
        k = 2 if t % 2 == 0 else 3
        T = random_sc_tree(rng, k + 1, max_leaves=20)
        steps = random_internal_path(rng, T)
        T2, P, F = double_sc_tree(T, steps)
        lhs, rhs = eval_sc_tree(T2), flip_sum(eval_sc_tree(T), P, F)
        bad += not (is_isomorphic(lhs, rhs) and T2.height() <= k + 1)
    report(7, bad == 0, f"{bad} mismatches over 100 SC(2)/SC(3) doublings")
    assert bad == 0


def test_criterion_08_cliquewidth():
    rows = {}
    for n in range(7, 13):
        e = hn_clique_expression(n)
        rows[n] = e.width() <= 4 and is_isomorphic(eval_clique_expression(e)[0], build_H(n).graph)
    good = all(rows.values())
    report(8, good, f"width <= 4 and isomorphic to H_n for n=7..12: {list(rows.values())}")
    assert good


def max_degree_two(rng: random.Random, order: int) -> Graph:
    """Random disjoint union of paths and cycles."""
    verts = list(range(order))
    rng.shuffle(verts)
    edges = []
    i = 0
    while i < order:
        size = rng.randint(1, order - i)
        seg = verts[i:i + size]
        edges += list(zip(seg, seg[1:]))
        if size >= 3 and rng.random() < 0.5:
            edges.append((seg[-1], seg[0]))
        i += size
    return Graph.from_edges(order, edges)


def test_criterion_09_bounded_degree_flat():
    rng = random.Random(99)
    r, m, d = 1, 3, 2
    floor = dd_threshold(m, d, r)
    bad = 0
    for _ in range(100):
        G = max_degree_two(rng, rng.randint(floor, 30))
        for H in (G, G.complement()):
            P, F = dd_flip(H, d)
            A = greedy_independent_set(apply_flip(H, P, F), r)[:m]
            bad += not verify_flat_witness(H, P, F, A, r, m)
    report(9, bad == 0 and floor == 7, f"threshold {floor}, {bad} failures over 100 graphs "
                                       "and their complements")
    assert bad == 0 and floor == 7


def test_criterion_10_constants():
    grid = [0, 1, 4]
    bad = 0
    points = 0
    for rho in grid:
        for s in grid:
            for gamma in grid:
                for ell in grid:
                    for p in grid:
                        points += 1
                        c = theorem_constants(rho, s, gamma, ell, p)
                        q = 3 * (rho + 1) + gamma
                        d = 2 * s * (rho * ell + rho + ell + 1) + 2 * (3 * rho + 1)
                        n = s * ell + 2 * s
                        m = (n - 1 if n else 0) * q + s * (ell + 1) + 1
                        rr = p * (4 * d) + (2 * rho + 1)
                        bad += (c.q, c.d, c.n, c.m, c.r) != (q, d, n, m, rr)
    good = points == 243 and bad == 0
    report(10, good, f"{bad} mismatches over {points} grid points")
    assert good
