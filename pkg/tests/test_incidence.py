# tests/test_incidence.py

import json

import pytest

from errors import CapabilityError, InvalidGraphError, QueryError
from exact_matrix import IntMatrix, tree_number
from generators import connected_graph_corpus, random_corpus, random_signed_graph
from incidence import (
    Edge,
    Incidence,
    IncidenceStructure,
    adjacency_matrix,
    degree_matrix,
    dump_graph,
    from_signed_edges,
    graph_from_json,
    incidence_matrix,
    laplacian,
    local_loading,
    signless_laplacian,
)


class TestFromSignedEdges:
    def test_positive_triangle_orientation(self, k3):
        assert len(k3.edges) == 3
        for e in k3.edges:
            assert tuple(inc.sigma for inc in e.incidences) == (1, -1)
            assert e.sign == 1

    def test_negative_edge_orientation(self):
        G = from_signed_edges(["a", "b"], [("a", "b", -1)])
        e = G.edges[0]
        assert tuple(inc.sigma for inc in e.incidences) == (1, 1)
        assert e.sign == -1

    def test_loop_rejected(self):
        with pytest.raises(InvalidGraphError):
            from_signed_edges(["a"], [("a", "a", 1)])

    def test_unknown_vertex_rejected(self):
        with pytest.raises(InvalidGraphError):
            from_signed_edges(["a", "b"], [("a", "z", 1)])

    def test_bad_sign_rejected(self):
        with pytest.raises(InvalidGraphError):
            from_signed_edges(["a", "b"], [("a", "b", 2)])

    def test_deterministic(self):
        edges = [("a", "b", 1), ("b", "c", -1)]
        assert from_signed_edges("abc", edges) == from_signed_edges("abc", edges)

    def test_signs_round_trip(self):
        edges = [("x", "a", "b", -1), ("y", "b", "c", 1), ("z", "a", "b", 1)]
        G = from_signed_edges("abc", edges)
        assert G.signed_edges() == [("x", "a", "b", -1), ("y", "b", "c", 1), ("z", "a", "b", 1)]
        assert G.multiplicity("a", "b") == 2

    def test_hyperedge_sign_needs_two_incidences(self, graph):
        with pytest.raises(CapabilityError):
            graph("triad").edges[0].sign


class TestMatrices:
    def test_k3_laplacian(self, k3):
        assert laplacian(k3) == IntMatrix([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])

    def test_hypergraph_laplacian(self, graph):
        G = graph("fig_hypergraph")
        assert laplacian(G) == IntMatrix([[1, -1, -1], [-1, 2, 2], [-1, 2, 2]])

    def test_k3_signless(self, k3):
        assert signless_laplacian(k3) == IntMatrix([[2, 1, 1], [1, 2, 1], [1, 1, 2]])

    @pytest.mark.parametrize("name", ["k3", "c5", "house_neg34", "fig_hypergraph", "triad", "diamond_st_neg"])
    def test_laplacian_is_degree_minus_adjacency(self, graph, name):
        G = graph(name)
        H = incidence_matrix(G)
        L = laplacian(G)
        assert L == H @ H.T
        assert L == degree_matrix(G) - adjacency_matrix(G)

    def test_signless_is_degree_plus_abs_adjacency(self):
        for G in random_corpus(count=30, max_n=6, seed=7):
            assert signless_laplacian(G) == degree_matrix(G) + abs(adjacency_matrix(G))

    def test_reorientation_keeps_laplacian(self):
        # same adjacency signs, flipped sigmas on the second edge
        G = from_signed_edges("abc", [("a", "b", 1), ("b", "c", -1)])
        flipped = IncidenceStructure(
            G.vertices,
            (G.edges[0], Edge(G.edges[1].id, (Incidence("b", -1), Incidence("c", -1)))),
        )
        assert flipped.edges[1].sign == -1
        assert laplacian(flipped) == laplacian(G)
        assert G.reorient(["e2"]) == flipped

    def test_reorient_unknown_edge(self, k3):
        with pytest.raises(QueryError):
            k3.reorient(["zz"])

    @pytest.mark.parametrize("name", ["house_neg34", "fig_hypergraph"])
    def test_reorient_every_edge(self, graph, name):
        G = graph(name)
        assert laplacian(G.reorient([e.id for e in G.edges])) == laplacian(G)

    def test_labels_follow_vertex_order(self, c5):
        L = laplacian(c5)
        assert L.labels == ("1", "2", "3", "4", "5")
        assert L["1", "2"] == -1
        assert L["3", "3"] == 2


class TestLocalLoading:
    def test_adds_missing_edge(self, p3):
        loaded, edge_id = local_loading(p3, "a", "c")
        assert len(loaded.edges) == 3
        assert loaded.edge(edge_id).ends == ("a", "c")
        assert loaded.edge(edge_id).sign == 1

    def test_existing_edge_unchanged(self, k3):
        loaded, edge_id = local_loading(k3, "a", "b")
        assert loaded is k3
        assert edge_id == "ab"

    def test_c4_chord_tree_number(self, c4):
        loaded, _ = local_loading(c4, "1", "3")
        assert tree_number(laplacian(loaded)) == 8

    def test_parallel_edges_pick_first_in_edge_order(self):
        G = from_signed_edges("ab", [("e9", "a", "b", 1), ("e10", "a", "b", -1)])
        loaded, edge_id = local_loading(G, "b", "a")
        assert loaded is G
        assert edge_id == "e9"

    def test_same_vertex_rejected(self, k3):
        with pytest.raises(QueryError):
            local_loading(k3, "a", "a")


class TestGraphJson:
    def test_unknown_top_field_rejected(self):
        with pytest.raises(InvalidGraphError):
            graph_from_json({"vertices": ["a"], "edges": [], "weights": []})

    def test_unknown_edge_field_rejected(self):
        data = {"vertices": ["a", "b"], "edges": [{"id": "e", "ends": ["a", "b"], "sign": 1, "weight": 2}]}
        with pytest.raises(InvalidGraphError):
            graph_from_json(data)

    def test_incidences_must_be_a_list(self):
        with pytest.raises(InvalidGraphError):
            graph_from_json({"edges": [{"id": "e1", "incidences": 5}]})

    def test_incidence_form_derives_vertices(self, graph):
        G = graph("fig_hypergraph")
        assert G.vertices == ("v1", "v2", "v3")
        assert not G.is_signed_graph

    def test_dump_reload(self, graph):
        G = graph("house_neg34")
        assert graph_from_json(json.loads(dump_graph(G))) == G

    def test_dump_is_stable(self, graph):
        G = graph("c5")
        assert dump_graph(G) == dump_graph(graph("c5"))


class TestGenerators:
    def test_complete_positive(self):
        G = random_signed_graph(5, 1.0, 0.0, seed=3)
        assert len(G.edges) == 10
        assert G.is_all_positive

    def test_edgeless(self):
        assert random_signed_graph(4, 0.0, 0.5, seed=1).edges == ()

    def test_seed_reproducible(self):
        assert random_signed_graph(6, 0.5, 0.5, seed=11) == random_signed_graph(6, 0.5, 0.5, seed=11)

    def test_all_negative_when_q_is_one(self):
        assert random_signed_graph(4, 1.0, 1.0, seed=0).is_all_negative

    def test_bad_arguments(self):
        with pytest.raises(QueryError):
            random_signed_graph(0, 0.5, 0.5, seed=0)
        with pytest.raises(QueryError):
            random_signed_graph(3, 1.5, 0.0, seed=0)

    def test_atlas_corpus_size(self):
        # 2 + 6 + 21 connected graphs on 3, 4 and 5 vertices
        assert len(connected_graph_corpus(3, 5)) == 29
