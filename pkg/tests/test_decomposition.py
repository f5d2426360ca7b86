import pytest
from hypothesis import given, settings

from ueds.decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    NiceNode,
    TreeDecomposition,
    emit_nice,
    emit_td,
    make_nice,
    parse_td,
    td_from_vertex_cover,
    validate_nice,
    validate_td,
)
from ueds.errors import DecompositionFormatError, InvalidDecomposition, NotACover
from ueds.graph import Graph, greedy_maximal_matching, vertex_cover_from_matching

from conftest import graphs, minimum_vertex_cover


class TestFromCover:
    def test_p4(self, p4):
        td = td_from_vertex_cover(p4, [1, 2])
        assert td.bags == ((0, 1, 2), (1, 2, 3))
        assert td.tree_edges == ((0, 1),)
        assert td.width == 2
        assert validate_td(p4, td) == []

    def test_k2(self, k2):
        td = td_from_vertex_cover(k2, [0])
        assert td.bags == ((0, 1),) and td.width == 1

    def test_k3(self, k3):
        td = td_from_vertex_cover(k3, [0, 1])
        assert td.bags == ((0, 1, 2),) and td.width == 2

    def test_not_a_cover(self, p4):
        with pytest.raises(NotACover):
            td_from_vertex_cover(p4, [0])

    def test_edgeless(self):
        g = Graph(3, [])
        td = td_from_vertex_cover(g, [])
        assert len(td.bags) == 3 and td.width == 0
        assert validate_td(g, td) == []

    @given(graphs(max_n=7))
    @settings(max_examples=50)
    def test_width_at_most_cover_size(self, g):
        cover = vertex_cover_from_matching(g, greedy_maximal_matching(g))
        td = td_from_vertex_cover(g, cover)
        assert td.width <= len(cover)
        assert validate_td(g, td) == []


class TestValidateTd:
    def test_missing_bag_reports_edge(self, p4):
        broken = TreeDecomposition(n=4, bags=((0, 1, 2),), tree_edges=())
        violations = validate_td(p4, broken)
        assert any("edge (3, 4)" in v for v in violations)
        assert any("vertex 4" in v for v in violations)

    def test_interpolation_violation_names_vertex(self, p4):
        broken = TreeDecomposition(
            n=4,
            bags=((0, 1), (1, 2), (0, 2, 3)),
            tree_edges=((0, 1), (1, 2)),
        )
        violations = validate_td(p4, broken)
        assert any("vertex 1" in v and "disconnected" in v for v in violations)

    def test_non_tree_detected(self, k3):
        broken = TreeDecomposition(
            n=3, bags=((0, 1, 2), (0, 1, 2)), tree_edges=()
        )
        assert any("tree" in v for v in validate_td(k3, broken))


class TestMakeNice:
    def test_k2_node_sequence(self, k2):
        nd = make_nice(k2, td_from_vertex_cover(k2, [0]))
        kinds = [node.kind for node in nd.nodes]
        assert kinds == [LEAF, INTRODUCE, INTRODUCE, INTRODUCE_EDGE, FORGET, FORGET]
        assert nd.nodes[-1].bag == ()
        assert validate_nice(k2, nd) == []

    def test_p4_three_edge_introductions(self, p4):
        td = td_from_vertex_cover(p4, [1, 2])
        nd = make_nice(p4, td)
        assert nd.count(INTRODUCE_EDGE) == p4.m == 3
        assert nd.width == td.width
        assert validate_nice(p4, nd) == []

    def test_k3_single_bag(self, k3):
        nd = make_nice(k3, td_from_vertex_cover(k3, [0, 1]))
        assert nd.count(INTRODUCE_EDGE) == 3
        assert nd.width == 2
        assert validate_nice(k3, nd) == []

    def test_join_shape(self, p4):
        td = TreeDecomposition(
            n=4, bags=((1, 2), (0, 1, 2), (1, 2, 3)), tree_edges=((0, 1), (0, 2))
        )
        nd = make_nice(p4, td)
        assert nd.count(JOIN) == 1
        assert validate_nice(p4, nd) == []

    def test_invalid_input_rejected(self, p4):
        broken = TreeDecomposition(n=4, bags=((0, 1, 2),), tree_edges=())
        with pytest.raises(InvalidDecomposition):
            make_nice(p4, broken)

    def test_late_placement_also_valid(self, p4):
        td = td_from_vertex_cover(p4, [1, 2])
        nd = make_nice(p4, td, edge_placement="late")
        assert validate_nice(p4, nd) == []
        assert nd.width == td.width

    @given(graphs(max_n=7))
    @settings(max_examples=50, deadline=None)
    def test_properties_on_random_graphs(self, g):
        cover = minimum_vertex_cover(g)
        td = td_from_vertex_cover(g, cover)
        for placement in ("early", "late"):
            nd = make_nice(g, td, edge_placement=placement)
            assert validate_nice(g, nd) == []
            assert nd.width == td.width
            # node count stays linear in n * (width + 1) + m
            assert len(nd.nodes) <= 4 * (g.n * (td.width + 1) + g.m) + 4
            for node in nd.nodes:
                if node.kind == INTRODUCE_EDGE:
                    u, v = node.edge
                    assert u in node.bag and v in node.bag


class TestValidateNice:
    def _nice_p4(self, p4):
        return make_nice(p4, td_from_vertex_cover(p4, [1, 2]))

    def test_duplicate_edge_introduction(self, p4):
        nd = self._nice_p4(p4)
        idx = next(
            i for i, node in enumerate(nd.nodes) if node.kind == INTRODUCE_EDGE
        )
        dup = nd.nodes[idx]
        parent = next(
            i for i, node in enumerate(nd.nodes) if idx in node.children
        )
        nd.nodes.insert(idx + 1, NiceNode(
            kind=INTRODUCE_EDGE,
            bag=dup.bag,
            children=(idx,),
            edge=dup.edge,
            edge_id=dup.edge_id,
        ))
        # shift references of everything after the insertion point
        fixed = []
        for i, node in enumerate(nd.nodes):
            if i <= idx + 1:
                fixed.append(node)
                continue
            children = tuple(
                c + 1 if c > idx else (idx + 1 if i == parent + 1 and c == idx else c)
                for c in node.children
            )
            fixed.append(NiceNode(
                kind=node.kind, bag=node.bag, children=children,
                vertex=node.vertex, edge=node.edge, edge_id=node.edge_id,
            ))
        nd.nodes = fixed
        assert any("introduced 2 times" in v for v in validate_nice(p4, nd))

    def test_forget_of_absent_vertex(self, p4):
        nd = self._nice_p4(p4)
        idx = next(i for i, node in enumerate(nd.nodes) if node.kind == FORGET)
        old = nd.nodes[idx]
        absent = next(v for v in range(4) if v not in nd.nodes[old.children[0]].bag)
        nd.nodes[idx] = NiceNode(
            kind=FORGET, bag=old.bag, children=old.children, vertex=absent
        )
        assert validate_nice(p4, nd)

    def test_root_must_be_empty(self, p4):
        nd = self._nice_p4(p4)
        nd.nodes = nd.nodes[:-1]  # drop the last forget
        assert any("root" in v for v in validate_nice(p4, nd))


class TestTdFormat:
    def test_spec_example_string(self, p4):
        td = parse_td("s td 2 3 4\nb 1 1 2 3\nb 2 2 3 4\n1 2\n")
        assert td.bags == ((0, 1, 2), (1, 2, 3))
        assert td.tree_edges == ((0, 1),)
        assert validate_td(p4, td) == []

    def test_round_trip_k2(self, k2):
        td = td_from_vertex_cover(k2, [0])
        assert parse_td(emit_td(td)) == td

    def test_round_trip_join_shape(self):
        td = TreeDecomposition(
            n=4, bags=((1, 2), (0, 1, 2), (1, 2, 3)), tree_edges=((0, 1), (0, 2))
        )
        assert parse_td(emit_td(td)) == td

    def test_out_of_range_vertex(self):
        with pytest.raises(DecompositionFormatError) as err:
            parse_td("s td 1 3 4\nb 1 1 2 9\n")
        assert err.value.line == 2

    @pytest.mark.parametrize(
        "text",
        [
            "b 1 1 2\n",  # content before header
            "s td 2 3 4\nb 1 1 2 3\n1 2\n",  # missing bag
            "s td 1 2 4\nb 1 1 2\nb 1 1 2\n",  # duplicate bag id
            "s td 1 2 4\nb 1 1 2\n1 5\n",  # tree edge out of range
            "s td 1 3 4\nb 1 1 2\n",  # header width disagrees with bags
        ],
    )
    def test_malformed_inputs(self, text):
        with pytest.raises(DecompositionFormatError):
            parse_td(text)

    def test_emit_nice_lists_every_node(self, p4):
        nd = make_nice(p4, td_from_vertex_cover(p4, [1, 2]))
        text = emit_nice(nd)
        lines = text.strip().splitlines()
        assert lines[0] == f"s ntd {len(nd.nodes)} {nd.width + 1}"
        assert len(lines) == len(nd.nodes) + 1
        assert sum(1 for line in lines if "introduce-edge" in line) == 3
