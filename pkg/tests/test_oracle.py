import pytest
from hypothesis import given, settings

from ueds.errors import InstanceTooLarge
from ueds.graph import Graph, greedy_maximal_matching, is_minimal_eds
from ueds.oracle import (
    bitforce_minimal_masks,
    decide,
    enumerate_minimal_eds,
    upper_eds_exact,
)

from conftest import all_graphs_on, graphs


class TestEnumeration:
    def test_k2_single_solution(self, k2):
        assert [s.mask for s in enumerate_minimal_eds(k2)] == [1]

    def test_k3_exactly_the_singletons(self, k3):
        assert [s.mask for s in enumerate_minimal_eds(k3)] == [1, 2, 4]

    def test_p4_exactly_two(self, p4):
        # the middle edge alone, and the two end edges together
        assert [s.mask for s in enumerate_minimal_eds(p4)] == [0b010, 0b101]

    def test_edgeless_graph_has_the_empty_solution(self):
        assert [s.mask for s in enumerate_minimal_eds(Graph(3, []))] == [0]

    def test_instance_limit(self):
        g = Graph(8, [(u, v) for u in range(8) for v in range(u + 1, 8)])
        with pytest.raises(InstanceTooLarge):
            list(enumerate_minimal_eds(g, limit=22))

    def test_every_enumerated_set_is_minimal(self, c5):
        for s in enumerate_minimal_eds(c5):
            assert is_minimal_eds(c5, s)

    def test_matches_bitforce_on_all_n4_graphs(self):
        for g in all_graphs_on(4):
            branching = [s.mask for s in enumerate_minimal_eds(g)]
            assert branching == bitforce_minimal_masks(g)

    @given(graphs(max_n=6))
    @settings(max_examples=60)
    def test_matches_bitforce_random(self, g):
        assert [s.mask for s in enumerate_minimal_eds(g)] == bitforce_minimal_masks(g)


class TestExactValue:
    @pytest.mark.parametrize(
        "fixture,want",
        [("k2", 1), ("k3", 1), ("p4", 2), ("c4", 2), ("c5", 2), ("k13", 1)],
    )
    def test_named_values(self, fixture, want, request):
        g = request.getfixturevalue(fixture)
        assert upper_eds_exact(g).gamma_prime == want

    def test_p4_witness(self, p4):
        r = upper_eds_exact(p4)
        assert r.witness.mask == 0b101 and r.gamma_prime == 2

    def test_edgeless(self):
        r = upper_eds_exact(Graph(5, []))
        assert r.gamma_prime == 0 and r.witness.mask == 0 and r.count_minimal == 1

    def test_c4_count_and_witness_tiebreak(self, c4):
        r = upper_eds_exact(c4)
        # all six 2-subsets minus nothing: the 4 adjacent pairs and 2 matchings
        assert r.count_minimal == 6
        assert r.witness.mask == 0b0011  # lexicographically smallest maximum

    def test_witness_always_minimal(self, c5):
        r = upper_eds_exact(c5)
        assert is_minimal_eds(c5, r.witness)
        assert r.witness.size == r.gamma_prime

    @given(graphs(max_n=6))
    @settings(max_examples=40)
    def test_gamma_at_least_any_maximal_matching(self, g):
        r = upper_eds_exact(g)
        assert r.gamma_prime >= greedy_maximal_matching(g).size


class TestDecide:
    def test_p4(self, p4):
        assert decide(p4, 2)
        assert not decide(p4, 3)

    def test_k_nonpositive_is_vacuous(self, p4):
        assert decide(p4, 0) and decide(p4, -3)

    @given(graphs(max_n=5))
    @settings(max_examples=40)
    def test_monotone_in_k(self, g):
        answers = [decide(g, k) for k in range(1, g.m + 2)]
        assert all(a or not b for a, b in zip(answers, answers[1:]))
