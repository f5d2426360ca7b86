"""
Graphs, edge domination, and matchings
======================================

The basic vocabulary of the toolkit: build graphs, test whether an edge set
dominates every edge, certify minimality through private edges, and see why
greedy maximal matchings always qualify.
"""

from ueds import (
    EdgeSet,
    domination_count,
    greedy_maximal_matching,
    is_edge_dominating,
    is_minimal_eds,
    parse_graph,
    star_decomposition,
    vertex_cover_from_matching,
)

# A path on four vertices, in the same text format the CLI reads.  Vertices
# are 1-indexed in text and 0-indexed in the library.
p4 = parse_graph("""\
c the path 1 - 2 - 3 - 4
p gr 4 3
1 2
2 3
3 4
""")
print(f"parsed: {p4}")

# The middle edge touches everything, so it dominates alone.  An end edge
# leaves the opposite end undominated.
middle = EdgeSet.from_ids([1])
end = EdgeSet.from_ids([0])
print("middle edge dominates:", is_edge_dominating(p4, middle))
print("end edge dominates:   ", is_edge_dominating(p4, end))

# Minimality is certified edge by edge: a member must have a "private" edge
# in its closed neighborhood, one dominated exactly once.  The two end edges
# together are minimal (each is its own private edge); adding the middle edge
# on top of an end edge is not.
both_ends = EdgeSet.from_ids([0, 2])
overlap = EdgeSet.from_ids([0, 1])
print("both ends minimal:    ", is_minimal_eds(p4, both_ends))
print("overlapping minimal:  ", is_minimal_eds(p4, overlap))
print("edge 34 dominated", domination_count(p4, overlap, 2), "time(s) by {12, 23}")

# A greedy maximal matching scans edges in id order and is always a minimal
# edge dominating set; its endpoints cover every edge of the graph.
matching = greedy_maximal_matching(p4)
print("greedy matching edge ids:", list(matching))
print("matching is minimal EDS: ", is_minimal_eds(p4, matching))
print("endpoints cover all edges:", vertex_cover_from_matching(p4, matching))

# Every minimal edge dominating set induces a disjoint union of stars.
structure = star_decomposition(p4, both_ends)
for star in structure.stars:
    kind = "single edge" if star.center is None else f"center {star.center + 1}"
    print(f"star ({kind}): leaves {[v + 1 for v in star.leaves]}")
