"""
Kernelization: shrink or decide
===============================

The kernelizer colors vertices by their role (pendant vertices blue, their
neighbors purple, purple-surrounded vertices red, the rest green) and applies
seven priority-ordered reduction rules.  The result is either an early YES or
an equivalent instance with at most 4k^2 - 2 vertices.
"""

from ueds import color_vertices, kernelize, parse_graph, upper_eds_exact
from ueds.kernel import DecidedYes

# A 12-vertex graph exercising all four color classes: three pendants, their
# three neighbors, two vertices seeing only those neighbors, and a green core.
g = parse_graph("""\
p gr 12 15
1 4
2 5
3 6
4 12
5 7
6 8
4 11
11 10
11 9
9 10
11 12
4 7
5 8
5 11
5 12
""")

coloring = color_vertices(g)
for name, members in [
    ("blue", coloring.blue),
    ("purple", coloring.purple),
    ("red", coloring.red),
    ("green", coloring.green),
]:
    print(f"{name:7s}: {[v + 1 for v in members]}")

print(f"\ngamma'(G) = {upper_eds_exact(g).gamma_prime}")

# Kernelize for growing k.  Small targets are decided outright; larger ones
# shrink the graph (the red vertices always go, pendant twins collapse).
for k in range(1, 7):
    outcome = kernelize(g, k)
    if isinstance(outcome, DecidedYes):
        print(f"k={k}: decided YES by rule {outcome.rule} ({outcome.hint})")
    else:
        print(
            f"k={k}: reduced to n={outcome.graph.n} m={outcome.graph.m} "
            f"k={outcome.k} (bound {4 * outcome.k ** 2 - 2})"
        )
        for line in outcome.trace:
            print("   ", line)
