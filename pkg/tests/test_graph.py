import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import flipped_graphs, graphs, rand_graph
from prescheck.graph import (
    Flip, Graph, GraphError, Partition, apply_flip, ball, canonical_form, disjoint_union,
    distance, find_isomorphism, flip_sum, greedy_independent_set, induced_subgraph,
    is_isomorphic, is_r_independent, relabel,
)
from prescheck.graphio import (
    GraphDocument, dump_document, format_edge_list, parse_document, parse_edge_list,
)


def to_nx(G: Graph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges())
    return H


def test_rejects_loops_and_duplicates():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)], strict=True)
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_partition_and_flip_validation():
    with pytest.raises(GraphError):
        Partition(2, (0, 2))
    with pytest.raises(GraphError):
        Partition.from_sets(3, [[0], [1]])
    F = Flip(3, frozenset({(0, 2)}))
    assert (2, 0) in F and (0, 2) in F
    with pytest.raises(GraphError):
        apply_flip(Graph.empty(2), Partition(2, (0, 1)), F)


@given(graphs())
def test_adjacency_symmetric_without_loops(G):
    for v in G.vertices:
        assert not G.has_edge(v, v)
        for w in G.neighbors(v):
            assert G.has_edge(w, v)


@given(flipped_graphs())
def test_flip_is_an_involution(data):
    G, P, F = data
    assert apply_flip(apply_flip(G, P, F), P, F) == G


@given(flipped_graphs())
def test_empty_flip_is_identity(data):
    G, P, _ = data
    empty = Flip(P.k)
    assert apply_flip(G, P, empty) == G
    assert flip_sum(G, P, empty) == disjoint_union(G, G)


@given(flipped_graphs())
def test_flip_matches_pairwise_definition(data):
    G, P, F = data
    H = apply_flip(G, P, F)
    for u in G.vertices:
        for v in G.vertices:
            if u != v:
                want = G.has_edge(u, v) != ((P.part_of[u], P.part_of[v]) in F)
                assert H.has_edge(u, v) == want


@given(flipped_graphs())
def test_flip_sum_copies_and_cross_edges(data):
    G, P, F = data
    n = G.order
    S = flip_sum(G, P, F)
    assert induced_subgraph(S, range(n))[0] == G
    assert induced_subgraph(S, range(n, 2 * n))[0] == G
    for u in range(n):
        for v in range(n):
            assert S.has_edge(u, v + n) == ((P.part_of[u], P.part_of[v]) in F)


@given(flipped_graphs(), st.data())
def test_flip_commutes_with_induced_subgraphs(data, draw):
    G, P, F = data
    S = sorted(draw.draw(st.sets(st.integers(0, max(G.order - 1, 0)))) & set(G.vertices))
    left = induced_subgraph(apply_flip(G, P, F), S)[0]
    right = apply_flip(induced_subgraph(G, S)[0], P.restrict(S), F)
    assert left == right


@given(graphs(min_order=1), st.integers(0, 4), st.integers(0, 4), st.data())
def test_ball_composition(G, r, s, data):
    v = data.draw(st.integers(0, G.order - 1))
    inner = ball(G, v, r)
    assert ball(G, v, r) <= ball(G, v, r + 1)
    assert ball(G, inner, s) == ball(G, v, r + s)


@given(graphs(min_order=1), st.data())
def test_distances_against_networkx(G, data):
    v = data.draw(st.integers(0, G.order - 1))
    lengths = nx.single_source_shortest_path_length(to_nx(G), v)
    for w in G.vertices:
        assert distance(G, v, w) == lengths.get(w, float("inf"))


@given(graphs(), st.integers(0, 3))
def test_greedy_set_is_r_independent(G, r):
    A = greedy_independent_set(G, r)
    assert is_r_independent(G, A, r)
    # maximal: every vertex lies within r of a pick
    assert ball(G, A, r) == set(G.vertices) if A else G.order == 0


@settings(max_examples=60)
@given(graphs(max_order=8), st.data())
def test_isomorphism_against_networkx(G, data):
    perm = data.draw(st.permutations(list(range(G.order))))
    H = relabel(G, list(perm))
    assert is_isomorphic(G, H)
    assert canonical_form(G) == canonical_form(H)
    m = find_isomorphism(G, H)
    assert m is not None and relabel(G, m) == H
    other = data.draw(graphs(min_order=G.order, max_order=G.order))
    assert is_isomorphic(G, other) == nx.is_isomorphic(to_nx(G), to_nx(other))
    assert (canonical_form(G) == canonical_form(other)) == is_isomorphic(G, other)


def test_isomorphism_is_an_equivalence_on_a_sample():
    rng = random.Random(5)
    sample = [rand_graph(rng, 5, 0.5) for _ in range(25)]
    for A in sample:
        assert is_isomorphic(A, A)
        for B in sample:
            ab = is_isomorphic(A, B)
            assert ab == is_isomorphic(B, A)
            if ab:
                assert all(is_isomorphic(A, C) == is_isomorphic(B, C) for C in sample)


def test_coloured_isomorphism():
    P3 = Graph.path(3)
    assert is_isomorphic(P3, P3, [0, 1, 0], [0, 1, 0])
    assert not is_isomorphic(P3, P3, [1, 0, 0], [0, 1, 0])
    assert canonical_form(P3, [0, 1, 0]) != canonical_form(P3, [0, 2, 0])


@given(flipped_graphs())
def test_json_round_trip(data):
    G, P, F = data
    doc = GraphDocument(G, {"root": 0} if G.order else {}, P, F)
    back = parse_document(__import__("json").loads(dump_document(doc)))
    assert back.graph == G and back.partition == P and back.flip == F


@given(graphs())
def test_edge_list_round_trip(G):
    assert parse_edge_list(format_edge_list(G)) == G


def test_document_rejections():
    for bad in ({"order": 2}, {"order": -1, "edges": []}, {"order": 2, "edges": [[0, 0]]},
                {"order": 2, "edges": [[0, 1]], "labels": {"a": 5}},
                {"order": 2, "edges": [], "partition": [0]}):
        with pytest.raises(GraphError):
            parse_document(bad)
