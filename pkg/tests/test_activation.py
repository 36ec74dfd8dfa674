# tests/test_activation.py

import pytest

from activation import (
    class_poset,
    class_report,
    tail_classes,
    transpedance_D_activation,
    transpedance_P_activation,
    trivial_reduced_classes,
)
from contributors import (
    enumerate_contributors,
    enumerate_reduced_nonzero,
    enumerate_restricted,
    sgn_D,
    transpedance_D_bruteforce,
    transpedance_P_bruteforce,
)
from errors import CapabilityError, QueryError
from generators import random_corpus
from incidence import from_signed_edges


class TestTailClasses:
    def test_k3_partition(self, k3):
        classes = tail_classes(k3)
        assert len(classes) == 8
        assert [cls.size for cls in classes] == [2] * 8
        members = [c for cls in classes for c in cls.members]
        assert set(members) == set(enumerate_contributors(k3))

    def test_least_element_is_identity_clone(self, k3):
        for cls in tail_classes(k3):
            assert cls.members[0].is_identity_clone
            assert sum(1 for c in cls.members if c.is_identity_clone) == 1

    def test_reduced_c5_sizes(self, c5):
        classes = tail_classes(c5, ("1", "3"), ("1", "2"))
        assert sorted(cls.size for cls in classes) == [1, 1, 1, 2]
        members = {c for cls in classes for c in cls.members}
        assert members == set(enumerate_reduced_nonzero(c5, ("1", "3"), ("1", "2")))

    def test_reduced_classes_partition(self):
        for G in random_corpus(count=30, max_n=5, seed=21):
            for w in [("1", "2"), ("2", "3"), ("3", "1")]:
                members = [c for cls in tail_classes(G, ("1", "2"), w) for c in cls.members]
                assert len(members) == len(set(members))
                assert set(members) == set(enumerate_reduced_nonzero(G, ("1", "2"), w))

    def test_restricted_unreduced_classes(self, k3):
        members = {c for cls in tail_classes(k3, ("a",), ("b",), reduced=False) for c in cls.members}
        assert members == set(enumerate_restricted(k3, ("a",), ("b",)))

    def test_degenerate_query_has_no_classes(self, k3):
        assert tail_classes(k3, ("a", "a"), ("b", "c")) == []

    def test_length_mismatch(self, k3):
        with pytest.raises(QueryError):
            tail_classes(k3, ("a", "b"), ("c",))

    def test_isolated_vertex_gives_no_classes(self):
        G = from_signed_edges("abc", [("a", "b", 1)])
        assert tail_classes(G) == []
        assert trivial_reduced_classes(G, ("a", "b"), ("a", "b")) == ()


class TestClassPoset:
    def test_k3_class_is_a_chain(self, k3):
        poset = class_poset(tail_classes(k3)[0])
        assert poset.covers == ((0, 1),)
        assert poset.least == 0
        assert poset.rank_sizes() == [1, 1]

    def test_boolean_lattice_covers(self):
        # two disjoint edges: one tail map has two circles
        G = from_signed_edges("abcd", [("a", "b", 1), ("c", "d", -1)])
        cls = next(cls for cls in tail_classes(G) if cls.rank == 2)
        poset = class_poset(cls)
        assert cls.size == 4
        assert len(poset.covers) == 4
        assert poset.rank_sizes() == [1, 2, 1]
        assert len(poset.incomparable) == 1

    def test_triad_is_not_boolean(self, graph):
        (cls,) = tail_classes(graph("triad"))
        assert not cls.boolean
        assert cls.size == 6
        poset = class_poset(cls)
        assert poset.rank_sizes() == [1, 3, 2]
        assert len(poset.covers) == 9
        assert poset.conflicts == ()
        assert cls.members[poset.least].is_identity_clone
        assert cls.rank == 2

    def test_class_report_fields(self, c5):
        report = class_report(tail_classes(c5, ("1", "3"), ("1", "2"))[0])
        assert set(report) == {"tailmap", "size", "rank", "maximal", "eta", "positive_circle_free", "sum_sgnD"}


class TestActivationTranspedance:
    def test_c5(self, c5):
        assert transpedance_D_activation(c5, "1", "3", "1", "2") == -3

    def test_house_values(self, graph):
        assert transpedance_D_activation(graph("house_neg34"), "1", "2", "1", "2") == -12
        assert transpedance_D_activation(graph("house_allpos"), "1", "2", "1", "2") == -8

    def test_house_surviving_contributors(self, graph):
        G = graph("house_neg34")
        classes = tail_classes(G, ("1", "2"), ("1", "2"))
        surviving = [c for cls in classes if cls.positive_circle_free for c in cls.members]
        assert len(surviving) == 12
        assert {sgn_D(c) for c in surviving} == {-1}
        assert sum(1 for c in surviving if c.is_identity_clone) == 10
        assert sorted(cls.eta for cls in classes if cls.positive_circle_free and cls.circles) == [1, 1]

    def test_positive_circle_classes_cancel(self, graph):
        for name in ["house_neg34", "house_allpos", "diamond_st_neg"]:
            G = graph(name)
            for cls in tail_classes(G, ("1", "2"), ("3", "4")):
                if not cls.positive_circle_free:
                    assert cls.sum_sgn_D() == 0

    def test_matches_bruteforce(self):
        for G in random_corpus(count=40, max_n=6, seed=13):
            for w1, w2 in [("1", "2"), ("3", "1"), ("2", "3"), ("3", "3")]:
                assert transpedance_D_activation(G, "1", "2", w1, w2) == transpedance_D_bruteforce(G, "1", "2", w1, w2)
                assert transpedance_P_activation(G, "1", "2", w1, w2) == transpedance_P_bruteforce(G, "1", "2", w1, w2)

    def test_hypergraph_rejected(self, graph):
        with pytest.raises(CapabilityError):
            transpedance_D_activation(graph("fig_hypergraph"), "v1", "v2", "v1", "v2")


class TestTrivialClasses:
    def test_counts(self, k3, c5):
        assert len(trivial_reduced_classes(c5, ("1", "3"), ("1", "2"))) == 3
        assert len(trivial_reduced_classes(k3, ("a", "b"), ("a", "b"))) == 2

    def test_trivial_members_are_alone(self, graph):
        G = graph("house_allpos")
        singles = {cls.base for cls in tail_classes(G, ("1", "2"), ("4", "5")) if cls.size == 1}
        assert set(trivial_reduced_classes(G, ("1", "2"), ("4", "5"))) == singles
