import pytest
from hypothesis import given, settings

from ueds.decomposition import TreeDecomposition, make_nice, td_from_vertex_cover
from ueds.dp import (
    BLACK,
    GREEN,
    PURPLE,
    RED0,
    RED1,
    NodeTable,
    dp_forget,
    dp_introduce_edge,
    dp_introduce_vertex,
    dp_join,
    dp_leaf,
    extract_witness,
    run_dp,
    state_space_bound,
)
from ueds.errors import BagMismatch
from ueds.graph import Graph, is_minimal_eds, star_decomposition
from ueds.oracle import upper_eds_exact

from conftest import all_graphs_on, graphs, minimum_vertex_cover


def nice_for(g, placement="early", cover=None):
    cover = minimum_vertex_cover(g) if cover is None else cover
    return make_nice(g, td_from_vertex_cover(g, cover), edge_placement=placement)


class TestLeaf:
    def test_single_empty_state(self):
        table = dp_leaf()
        assert table.bag == ()
        assert set(table.states) == {((), (), 0, 0, 0, 0, 0)}
        assert len(table) == 1

    def test_idempotent(self):
        assert dp_leaf() == dp_leaf()


class TestIntroduceVertex:
    def test_four_colors_never_r1(self):
        table = dp_introduce_vertex(dp_leaf(), 0)
        assert len(table) == 4
        colors = {state[0][0] for state in table.states}
        assert colors == {BLACK, PURPLE, GREEN, RED0}
        for state in table.states:
            f, y, n_r, n_r1, n_c, alpha, beta = state
            assert y == (0,)
            assert n_r == (1 if f[0] == RED0 else 0)
            assert (n_r1, n_c, alpha, beta) == (0, 0, 0, 0)

    def test_size_exactly_four_times_child(self):
        child = dp_introduce_vertex(dp_leaf(), 1)
        table = dp_introduce_vertex(child, 3)
        assert len(table) == 4 * len(child)
        assert table.bag == (1, 3)

    def test_rejects_vertex_already_present(self):
        child = dp_introduce_vertex(dp_leaf(), 1)
        with pytest.raises(ValueError):
            dp_introduce_vertex(child, 1)


def table_over(bag, rows):
    """Hand-build a NodeTable; rows are (f, y, n_r, n_r1, n_c, alpha, beta)."""
    return NodeTable(bag, {tuple(row): ("leaf",) for row in rows})


class TestIntroduceEdge:
    def test_purple_pair_include_branch(self):
        child = table_over((0, 1), [((PURPLE, PURPLE), (0, 0), 0, 0, 0, 0, 0)])
        out = dp_introduce_edge(child, 0, 1)
        included = [s for s in out.states if s[5] == 1]
        assert included == [((PURPLE, PURPLE), (1, 1), 0, 0, 0, 1, 0)]
        excluded = [s for s in out.states if s[5] == 0]
        assert excluded == [((PURPLE, PURPLE), (0, 0), 0, 0, 0, 0, 0)]

    def test_red_upgrade_on_excluded_black_edge(self):
        child = table_over((0, 1), [((RED0, BLACK), (0, 0), 1, 0, 0, 0, 0)])
        out = dp_introduce_edge(child, 0, 1)
        assert set(out.states) == {((RED1, BLACK), (0, 0), 1, 1, 0, 0, 0)}

    def test_black_black_bumps_beta_without_pruning(self):
        child = table_over((0, 1), [((BLACK, BLACK), (0, 0), 0, 0, 0, 0, 0)])
        out = dp_introduce_edge(child, 0, 1, prune=False)
        assert set(out.states) == {((BLACK, BLACK), (0, 0), 0, 0, 0, 0, 1)}
        assert len(dp_introduce_edge(child, 0, 1, prune=True)) == 0

    def test_black_endpoint_never_included(self):
        child = table_over((0, 1), [((BLACK, PURPLE), (0, 0), 0, 0, 0, 0, 0)])
        out = dp_introduce_edge(child, 0, 1)
        assert all(state[5] == 0 for state in out.states)

    def test_green_red_include(self):
        child = table_over((0, 1), [((GREEN, RED0), (0, 0), 1, 0, 0, 0, 0)])
        out = dp_introduce_edge(child, 0, 1)
        included = [s for s in out.states if s[5] == 1]
        assert included == [((GREEN, RED0), (1, 1), 1, 0, 0, 1, 0)]

    def test_purple_overflow_pruned(self):
        child = table_over((0, 1), [((PURPLE, PURPLE), (1, 1), 0, 0, 0, 1, 0)])
        pruned = dp_introduce_edge(child, 0, 1, prune=True)
        assert all(state[5] == 1 for state in pruned.states)  # no second include
        kept = dp_introduce_edge(child, 0, 1, prune=False)
        assert any(state[5] == 2 for state in kept.states)


class TestForget:
    def test_satisfied_purple_counts(self):
        child = table_over((0, 1), [((PURPLE, PURPLE), (1, 1), 0, 0, 0, 1, 0)])
        out = dp_forget(child, 0)
        assert set(out.states) == {((PURPLE,), (1,), 0, 0, 1, 1, 0)}

    def test_unsatisfied_green_dropped(self):
        child = table_over((0,), [((GREEN,), (1,), 0, 0, 0, 1, 0)])
        assert len(dp_forget(child, 0)) == 0

    def test_idle_black_counts(self):
        child = table_over((0,), [((BLACK,), (0,), 0, 0, 0, 0, 0)])
        out = dp_forget(child, 0)
        assert set(out.states) == {((), (), 0, 0, 1, 0, 0)}

    def test_uncertified_red_pruned_but_kept_without_pruning(self):
        child = table_over((0,), [((RED0,), (1,), 1, 0, 0, 1, 0)])
        assert len(dp_forget(child, 0, prune=True)) == 0
        assert len(dp_forget(child, 0, prune=False)) == 1


class TestJoin:
    def test_zero_case_double_counts_nothing(self):
        left = table_over((0,), [((PURPLE,), (0,), 0, 0, 0, 0, 0)])
        out = dp_join(left, left)
        assert set(out.states) == {((PURPLE,), (0,), 0, 0, 0, 0, 0)}

    def test_incidence_and_alpha_add(self):
        left = table_over((0,), [((PURPLE,), (1,), 0, 0, 1, 1, 0)])
        right = table_over((0,), [((PURPLE,), (0,), 0, 0, 0, 0, 0)])
        out = dp_join(left, right)
        assert set(out.states) == {((PURPLE,), (1,), 0, 0, 1, 1, 0)}

    def test_red_flavor_merges_disjunctively(self):
        left = table_over((0,), [((RED1,), (1,), 1, 1, 0, 1, 0)])
        right = table_over((0,), [((RED0,), (0,), 1, 0, 0, 0, 0)])
        out = dp_join(left, right)
        assert set(out.states) == {((RED1,), (1,), 1, 1, 0, 1, 0)}

    def test_colors_must_agree_outside_red(self):
        left = table_over((0,), [((PURPLE,), (0,), 0, 0, 0, 0, 0)])
        right = table_over((0,), [((GREEN,), (0,), 0, 0, 0, 0, 0)])
        assert len(dp_join(left, right)) == 0

    def test_bag_mismatch(self):
        left = table_over((0,), [((PURPLE,), (0,), 0, 0, 0, 0, 0)])
        right = table_over((1,), [((PURPLE,), (0,), 0, 0, 0, 0, 0)])
        with pytest.raises(BagMismatch):
            dp_join(left, right)


class TestRunDp:
    @pytest.mark.parametrize(
        "fixture,want",
        [("k2", 1), ("p4", 2), ("k3", 1), ("c4", 2), ("c5", 2), ("k13", 1)],
    )
    def test_named_values_both_engines(self, fixture, want, request):
        g = request.getfixturevalue(fixture)
        nd = nice_for(g)
        assert run_dp(g, nd, engine="fast").gamma_prime == want
        assert run_dp(g, nd, engine="tuple").gamma_prime == want

    def test_edgeless_graph(self):
        g = Graph(4, [])
        assert run_dp(g, nice_for(g)).gamma_prime == 0

    def test_single_vertex(self):
        g = Graph(1, [])
        assert run_dp(g, nice_for(g)).gamma_prime == 0

    def test_table_sizes_within_bound(self, c5):
        nd = nice_for(c5)
        result = run_dp(c5, nd)
        assert result.max_table_size <= state_space_bound(nd.width, c5.n, c5.m)

    def test_decomposition_invariance(self, p4):
        path_nd = nice_for(p4, cover=(1, 2))
        join_td = TreeDecomposition(
            n=4, bags=((1, 2), (0, 1, 2), (1, 2, 3)), tree_edges=((0, 1), (0, 2))
        )
        join_nd = make_nice(p4, join_td)
        values = {
            run_dp(p4, nd, engine=engine).gamma_prime
            for nd in (path_nd, join_nd)
            for engine in ("fast", "tuple")
        }
        assert values == {2}

    def test_diagnostics_format(self, k2):
        result = run_dp(k2, nice_for(k2))
        lines = result.diagnostics_lines()
        assert lines[-1] == "gamma_prime=1"
        assert all(
            line.startswith("node=") and " type=" in line and " tuples=" in line
            for line in lines[:-1]
        )

    def test_exhaustive_n4_all_engines_and_pruning(self):
        for g in all_graphs_on(4):
            nd = nice_for(g)
            want = upper_eds_exact(g).gamma_prime
            assert run_dp(g, nd, engine="fast").gamma_prime == want
            assert run_dp(g, nd, engine="tuple", prune=True).gamma_prime == want
            assert run_dp(g, nd, engine="tuple", prune=False).gamma_prime == want

    @given(graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_oracle_equivalence_random(self, g):
        want = upper_eds_exact(g).gamma_prime
        nd = nice_for(g)
        result = run_dp(g, nd)
        assert result.gamma_prime == want
        assert result.max_table_size <= state_space_bound(nd.width, g.n, g.m)

    @given(graphs(max_n=6))
    @settings(max_examples=25, deadline=None)
    def test_join_decompositions_agree(self, g):
        # a decomposition with a genuine join: two bags around a shared core
        cover = minimum_vertex_cover(g)
        rest = [v for v in range(g.n) if v not in cover]
        if len(rest) < 2:
            return
        core = tuple(sorted(cover))
        b1 = tuple(sorted(set(core) | {rest[0]}))
        b2 = tuple(sorted(set(core) | set(rest[1:])))
        td = TreeDecomposition(
            n=g.n, bags=(core, b1, b2), tree_edges=((0, 1), (0, 2))
        )
        nd = make_nice(g, td)
        want = upper_eds_exact(g).gamma_prime
        assert run_dp(g, nd, engine="fast").gamma_prime == want
        assert run_dp(g, nd, engine="tuple").gamma_prime == want


class TestWitness:
    def test_p4_unique_maximum(self, p4):
        nd = nice_for(p4)
        result = run_dp(p4, nd, keep_tables=True)
        assert list(extract_witness(p4, nd, result)) == [0, 2]

    def test_k2(self, k2):
        nd = nice_for(k2)
        result = run_dp(k2, nd, keep_tables=True)
        assert list(extract_witness(k2, nd, result)) == [0]

    def test_c4_maximum_witness(self, c4):
        nd = nice_for(c4)
        result = run_dp(c4, nd, keep_tables=True)
        witness = extract_witness(c4, nd, result)
        assert witness.size == 2
        assert is_minimal_eds(c4, witness)

    def test_requires_kept_tables(self, k2):
        nd = nice_for(k2)
        result = run_dp(k2, nd, keep_tables=False)
        with pytest.raises(ValueError):
            extract_witness(k2, nd, result)

    @given(graphs(max_n=7))
    @settings(max_examples=40, deadline=None)
    def test_witness_valid_and_structured(self, g):
        nd = nice_for(g)
        for engine in ("fast", "tuple"):
            result = run_dp(g, nd, engine=engine, keep_tables=True)
            witness = extract_witness(g, nd, result)
            assert witness.size == result.gamma_prime
            if g.m:
                assert is_minimal_eds(g, witness)
            structure = star_decomposition(g, witness)
            touched = {v for e in witness for v in g.edges[e]}
            for star in structure.stars:
                if star.center is not None:
                    for leaf in star.leaves:
                        assert any(
                            w not in touched for w, _ in g.adj[leaf]
                        ), "star leaf lacks its untouched-neighbor certificate"


class TestCounterMonotonicity:
    def test_beta_never_decreases_and_accepting_paths_avoid_red_forgets(self, c5):
        nd = nice_for(c5)
        result = run_dp(c5, nd, engine="tuple", prune=False, keep_tables=True)
        tables = result.tables
        # beta monotone along every back-reference
        for idx, node in enumerate(nd.nodes):
            for state, back in tables[idx].states.items():
                if back[0] in ("iv", "ie", "fg"):
                    assert state[6] >= back[1][6]
        # walk the accepting state: no forget of an uncertified red on it
        stack = [(nd.root, result.accepting_state)]
        while stack:
            idx, state = stack.pop()
            node = nd.nodes[idx]
            back = tables[idx].states[state]
            if back[0] == "leaf":
                continue
            if back[0] == "fg":
                child_state = back[1]
                child_bag = nd.nodes[node.children[0]].bag
                pos = child_bag.index(node.vertex)
                assert child_state[0][pos] != RED0
            if back[0] == "jn":
                stack.append((node.children[0], back[1]))
                stack.append((node.children[1], back[2]))
            else:
                stack.append((node.children[0], back[1]))
