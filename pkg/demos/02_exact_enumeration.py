"""
Brute-force ground truth on small graphs
========================================

The enumeration oracle lists every inclusion-minimal edge dominating set of
a small graph exactly once, which pins down the exact optimum and a witness.
Everything else in the toolkit is validated against it.
"""

from ueds import enumerate_minimal_eds, parse_graph, upper_eds_exact
from ueds.generate import GenSpec, gen

# All the minimal edge dominating sets of the 4-path, by hand and by oracle:
# {middle} and {the two ends}, nothing else.
p4 = parse_graph("p gr 4 3\n1 2\n2 3\n3 4\n")
for solution in enumerate_minimal_eds(p4):
    print("minimal EDS of P4:", [tuple(x + 1 for x in p4.edges[e]) for e in solution])

# The exact answer comes with a witness and the count of minimal solutions.
result = upper_eds_exact(p4)
print(f"gamma'(P4) = {result.gamma_prime}  (of {result.count_minimal} minimal sets)")

# Values for the usual small suspects.
named = {
    "K2": "p gr 2 1\n1 2\n",
    "K3": "p gr 3 3\n1 2\n2 3\n1 3\n",
    "C4": "p gr 4 4\n1 2\n2 3\n3 4\n4 1\n",
    "C5": "p gr 5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n",
    "K13": "p gr 4 3\n1 2\n1 3\n1 4\n",
}
for name, text in named.items():
    g = parse_graph(text)
    r = upper_eds_exact(g)
    print(f"gamma'({name}) = {r.gamma_prime}   count = {r.count_minimal}")

# The maximum can be surprisingly large on dense graphs: stars with many
# leaves beat matchings.  A random 10-vertex graph:
g = gen(GenSpec("gnp", 10, 0.6, seed=7))
r = upper_eds_exact(g, limit=64)
print(
    f"random n=10 m={g.m}: gamma' = {r.gamma_prime} "
    f"with witness of {r.witness.size} edges out of {r.count_minimal} minimal sets"
)
