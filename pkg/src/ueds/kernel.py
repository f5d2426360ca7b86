"""Polynomial-time kernelization: shrink an instance (G, k) to at most
4k^2 - 2 vertices or decide it outright.

Vertices of a graph without isolated vertices split into four classes:

    blue    degree exactly 1
    purple  not blue, adjacent to a blue vertex
    red     not blue or purple, every neighbor purple
    green   everything else (each green vertex keeps a green neighbor)

Seven reduction rules fire in fixed priority, the coloring recomputed from
scratch after every change so each rule's precondition stays honest:

    1  drop an isolated vertex
    2  an isolated edge is forced into any solution: drop it, k -= 1
    3  a purple vertex keeps only its lowest-indexed blue neighbor
    4  a green vertex of degree >= 2k proves a yes-instance
    5  k blue vertices prove a yes-instance (their purple neighbors are
       distinct once rule 3 is exhausted, giving a matching of size >= k)
    6  red vertices are redundant: their solution edges can be swapped to
       blue neighbors of the same purple endpoints
    7  an irreducible instance on more than 4k^2 - 2 vertices is a
       yes-instance

Every application strictly shrinks |V| + k or decides, so the loop
terminates; an undecided loop leaves an instance within the size bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IsolatedVertexPresent, PreconditionViolated
from .graph import Graph, induced_subgraph

__all__ = [
    "BLUE",
    "PURPLE",
    "RED",
    "GREEN",
    "VertexColoring",
    "color_vertices",
    "Reduced",
    "DecidedYes",
    "KernelOutcome",
    "rule1_isolated_vertex",
    "rule2_isolated_edge",
    "rule3_prune_blue_twins",
    "rule4_big_green",
    "rule5_many_blue",
    "rule6_remove_red",
    "rule7_size_bound",
    "kernelize",
]

BLUE = "blue"
PURPLE = "purple"
RED = "red"
GREEN = "green"


@dataclass(frozen=True)
class VertexColoring:
    """The blue/purple/red/green partition of a graph's vertices."""

    colors: tuple[str, ...]

    @property
    def blue(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors) if c == BLUE)

    @property
    def purple(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors) if c == PURPLE)

    @property
    def red(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors) if c == RED)

    @property
    def green(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.colors) if c == GREEN)


def color_vertices(g: Graph) -> VertexColoring:
    """The unique coloring under the class definitions above.

    Raises IsolatedVertexPresent: isolated vertices fit no class and must be
    removed first (rule 1 does that).
    """
    colors: list[str | None] = [None] * g.n
    for v in range(g.n):
        if g.degree(v) == 0:
            raise IsolatedVertexPresent(f"vertex {v + 1} is isolated")
        if g.degree(v) == 1:
            colors[v] = BLUE
    for v in range(g.n):
        if colors[v] is None and any(colors[u] == BLUE for u, _ in g.adj[v]):
            colors[v] = PURPLE
    for v in range(g.n):
        if colors[v] is None and all(colors[u] == PURPLE for u, _ in g.adj[v]):
            colors[v] = RED
    for v in range(g.n):
        if colors[v] is None:
            colors[v] = GREEN
    return VertexColoring(tuple(colors))


@dataclass(frozen=True)
class Reduced:
    """An equivalent smaller instance, with the trace that produced it."""

    graph: Graph
    k: int
    trace: tuple[str, ...] = ()


@dataclass(frozen=True)
class DecidedYes:
    """The instance was decided positively by the named rule.

    rule 0 marks the k <= 0 short-circuit: the empty set is a minimal edge
    dominating set of size >= k, so no rule needs to fire.
    """

    rule: int
    hint: str
    trace: tuple[str, ...] = ()


KernelOutcome = Reduced | DecidedYes


def _line(rule: int, action: str, n: int, k: int) -> str:
    return f"rule={rule} action={action} n={n} k={k}"


def rule1_isolated_vertex(g: Graph, k: int) -> tuple[Graph, int, list[str]] | None:
    """Remove the lowest-indexed isolated vertex."""
    for v in range(g.n):
        if g.degree(v) == 0:
            g2 = induced_subgraph(g, (u for u in range(g.n) if u != v))
            return g2, k, [_line(1, f"delete-vertex {v + 1}", g2.n, k)]
    return None


def rule2_isolated_edge(g: Graph, k: int) -> tuple[Graph, int, list[str]] | None:
    """Remove the lowest-indexed isolated edge and decrease k."""
    for u, v in g.edges:
        if g.degree(u) == 1 and g.degree(v) == 1:
            g2 = induced_subgraph(g, (w for w in range(g.n) if w not in (u, v)))
            return g2, k - 1, [
                _line(2, f"delete-edge ({u + 1},{v + 1})", g2.n, k - 1)
            ]
    return None


def rule3_prune_blue_twins(
    g: Graph, k: int, coloring: VertexColoring | None = None
) -> tuple[Graph, int, list[str]] | None:
    """A purple vertex with several blue neighbors keeps only the
    lowest-indexed one; the others are interchangeable in any solution."""
    coloring = coloring or color_vertices(g)
    for p in coloring.purple:
        blues = sorted(u for u, _ in g.adj[p] if coloring.colors[u] == BLUE)
        if len(blues) > 1:
            drop = set(blues[1:])
            g2 = induced_subgraph(g, (w for w in range(g.n) if w not in drop))
            lines = []
            n_left = g.n
            for b in sorted(drop):
                n_left -= 1
                lines.append(_line(3, f"delete-vertex {b + 1}", n_left, k))
            return g2, k, lines
    return None


def rule4_big_green(
    g: Graph, k: int, coloring: VertexColoring | None = None
) -> DecidedYes | None:
    """A green vertex of degree >= 2k forces a yes: its neighbors all have
    degree >= 2, which yields a large minimal solution avoiding the vertex."""
    coloring = coloring or color_vertices(g)
    for v in coloring.green:
        if g.degree(v) >= 2 * k:
            return DecidedYes(
                rule=4,
                hint=(
                    f"green vertex {v + 1} has degree {g.degree(v)} >= 2k={2 * k}"
                ),
            )
    return None


def rule5_many_blue(
    g: Graph, k: int, coloring: VertexColoring | None = None
) -> DecidedYes | None:
    """At least k blue vertices force a yes.  Requires rule 3 exhausted, so
    the blue vertices' purple neighbors are pairwise distinct and the
    blue-purple edges form a matching of size >= k."""
    coloring = coloring or color_vertices(g)
    blues = coloring.blue
    if len(blues) >= k:
        return DecidedYes(
            rule=5,
            hint=f"{len(blues)} blue vertices >= k={k} give a matching that size",
        )
    return None


def rule6_remove_red(
    g: Graph, k: int, coloring: VertexColoring | None = None
) -> tuple[Graph, int, list[str]] | None:
    """Remove every red vertex; k is unchanged.  Any solution edge into a red
    vertex can be replaced by the purple endpoint's blue-neighbor edge."""
    coloring = coloring or color_vertices(g)
    reds = coloring.red
    if not reds:
        return None
    drop = set(reds)
    g2 = induced_subgraph(g, (w for w in range(g.n) if w not in drop))
    lines = []
    n_left = g.n
    for r in sorted(drop):
        n_left -= 1
        lines.append(_line(6, f"delete-vertex {r + 1}", n_left, k))
    return g2, k, lines


def rule7_size_bound(g: Graph, k: int) -> DecidedYes | None:
    """An instance none of rules 1-6 touches, on more than 4k^2 - 2 vertices,
    is a yes-instance.  Raises PreconditionViolated when called while an
    earlier rule still applies."""
    if rule1_isolated_vertex(g, k) or rule2_isolated_edge(g, k):
        raise PreconditionViolated("rules 1-2 still apply")
    coloring = color_vertices(g)
    if (
        rule3_prune_blue_twins(g, k, coloring)
        or rule4_big_green(g, k, coloring)
        or rule5_many_blue(g, k, coloring)
        or rule6_remove_red(g, k, coloring)
    ):
        raise PreconditionViolated("rules 3-6 still apply")
    bound = 4 * k * k - 2
    if g.n > bound:
        return DecidedYes(
            rule=7, hint=f"irreducible instance has {g.n} > 4k^2-2 = {bound} vertices"
        )
    return None


def kernelize(g: Graph, k: int) -> KernelOutcome:
    """Apply the lowest-numbered applicable rule, recompute the coloring, and
    repeat to a fixpoint.  k <= 0 at any point decides yes immediately.  An
    undecided fixpoint is an equivalent instance on at most 4k^2 - 2 vertices
    with no isolated vertices or edges and k >= 1.
    """
    trace: list[str] = []
    while True:
        if k <= 0:
            trace.append(_line(0, "decide-yes", g.n, k))
            return DecidedYes(
                rule=0,
                hint="k <= 0: the empty edge set is a minimal solution of size >= k",
                trace=tuple(trace),
            )
        applied = rule1_isolated_vertex(g, k) or rule2_isolated_edge(g, k)
        if applied:
            g, k, lines = applied
            trace.extend(lines)
            continue
        if g.n == 0:
            return Reduced(graph=g, k=k, trace=tuple(trace))
        coloring = color_vertices(g)
        applied = rule3_prune_blue_twins(g, k, coloring)
        if applied:
            g, k, lines = applied
            trace.extend(lines)
            continue
        decided = rule4_big_green(g, k, coloring) or rule5_many_blue(g, k, coloring)
        if decided:
            trace.append(_line(decided.rule, "decide-yes", g.n, k))
            return DecidedYes(rule=decided.rule, hint=decided.hint, trace=tuple(trace))
        applied = rule6_remove_red(g, k, coloring)
        if applied:
            g, k, lines = applied
            trace.extend(lines)
            continue
        bound = 4 * k * k - 2
        if g.n > bound:
            trace.append(_line(7, "decide-yes", g.n, k))
            return DecidedYes(
                rule=7,
                hint=f"irreducible instance has {g.n} > 4k^2-2 = {bound} vertices",
                trace=tuple(trace),
            )
        return Reduced(graph=g, k=k, trace=tuple(trace))
