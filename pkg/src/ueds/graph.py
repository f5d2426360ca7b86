"""Simple undirected graphs with stable edge indexing, plus the edge-domination
predicates and matching routines the rest of the toolkit builds on.

Vertices are 1-indexed in all external text formats and 0-indexed internally.
Edges get a stable id in input order, so every downstream computation that
iterates edges in id order is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import CoverViolation, GraphFormatError, NotStarForest

__all__ = [
    "EdgeSet",
    "Graph",
    "Star",
    "StarStructure",
    "parse_graph",
    "emit_graph",
    "is_edge_dominating",
    "domination_count",
    "is_minimal_eds",
    "greedy_maximal_matching",
    "star_decomposition",
    "vertex_cover_from_matching",
    "induced_subgraph",
]


@dataclass(frozen=True)
class EdgeSet:
    """A set of edge ids stored as a bitmask (bit e set <=> edge e is a member)."""

    mask: int = 0

    @classmethod
    def from_ids(cls, ids: Iterable[int]) -> "EdgeSet":
        mask = 0
        for e in ids:
            mask |= 1 << e
        return cls(mask)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, edge_id: int) -> bool:
        return bool(self.mask >> edge_id & 1)

    def __iter__(self) -> Iterator[int]:
        """Yield member edge ids in ascending order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def __bool__(self) -> bool:
        return self.mask != 0

    def add(self, edge_id: int) -> "EdgeSet":
        return EdgeSet(self.mask | 1 << edge_id)

    def remove(self, edge_id: int) -> "EdgeSet":
        return EdgeSet(self.mask & ~(1 << edge_id))

    def issubset(self, other: "EdgeSet") -> bool:
        return self.mask & ~other.mask == 0

    def ids(self) -> tuple[int, ...]:
        return tuple(self)


class Graph:
    """Immutable simple undirected graph.

    Construction validates simplicity (no loops, no parallel edges) and builds
    the adjacency structure once; all methods afterwards are pure, so a Graph
    can be shared freely between threads.
    """

    __slots__ = ("n", "m", "edges", "adj", "__dict__")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        normalized: list[tuple[int, int]] = []
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"parallel edge ({u}, {v})")
            seen.add(key)
            normalized.append((u, v))
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        self.n = n
        self.m = len(normalized)
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            tuple(lst) for lst in adj
        )

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def endpoints(self, edge_id: int) -> tuple[int, int]:
        return self.edges[edge_id]

    @property
    def vertices(self) -> range:
        return range(self.n)

    @cached_property
    def edge_neighborhood_masks(self) -> tuple[int, ...]:
        """For each edge e, the bitmask of edges sharing an endpoint with e,
        including e itself (the closed edge neighborhood)."""
        incident = [0] * self.n
        for eid, (u, v) in enumerate(self.edges):
            bit = 1 << eid
            incident[u] |= bit
            incident[v] |= bit
        return tuple(incident[u] | incident[v] for u, v in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Star:
    """One component of a star forest.

    A single-edge star (two degree-1 endpoints) has no distinguished center:
    ``center`` is None and both endpoints sit in ``leaves``.  Stars with two or
    more edges have a unique center.
    """

    center: int | None
    leaves: tuple[int, ...]
    edge_ids: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        if self.center is None:
            return frozenset(self.leaves)
        return frozenset((self.center, *self.leaves))


@dataclass(frozen=True)
class StarStructure:
    """A disjoint union of stars plus the vertices untouched by any star edge."""

    stars: tuple[Star, ...]
    isolated: tuple[int, ...]


def parse_graph(text: str | Iterable[str]) -> Graph:
    """Parse a PACE-style graph: comment lines start with "c", the header is
    "p gr <n> <m>", followed by m lines "<u> <v>" with 1-indexed vertices.

    Raises GraphFormatError (with a line number) on malformed headers,
    out-of-range vertices, self-loops, and duplicate edges.
    """
    if isinstance(text, str):
        lines: Iterable[tuple[int, str]] = enumerate(text.splitlines(), start=1)
    else:
        lines = enumerate(text, start=1)

    n = -1
    m_declared = -1
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n >= 0:
                raise GraphFormatError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "gr":
                raise GraphFormatError(f"malformed header {line!r}", lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"non-integer header field in {line!r}", lineno)
            if n < 0 or m_declared < 0:
                raise GraphFormatError("negative counts in header", lineno)
            continue
        if n < 0:
            raise GraphFormatError("edge line before header", lineno)
        if len(parts) != 2:
            raise GraphFormatError(f"malformed edge line {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex in {line!r}", lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"vertex index out of range in {line!r}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", lineno)
        key = (u - 1, v - 1) if u < v else (v - 1, u - 1)
        if key in seen:
            raise GraphFormatError(f"duplicate edge ({u}, {v})", lineno)
        seen.add(key)
        edges.append((u - 1, v - 1))
        if len(edges) > m_declared:
            raise GraphFormatError("more edge lines than declared", lineno)
    if n < 0:
        raise GraphFormatError("missing header")
    if len(edges) != m_declared:
        raise GraphFormatError(
            f"declared {m_declared} edges but found {len(edges)}"
        )
    return Graph(n, edges)


def emit_graph(g: Graph) -> str:
    """Serialize in the format parse_graph reads; byte-deterministic."""
    out = [f"p gr {g.n} {g.m}"]
    out.extend(f"{u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def _solution_degrees(g: Graph, solution: EdgeSet) -> list[int]:
    """Per-vertex count of solution edges incident to it."""
    deg = [0] * g.n
    for eid in solution:
        u, v = g.edges[eid]
        deg[u] += 1
        deg[v] += 1
    return deg


def is_edge_dominating(g: Graph, solution: EdgeSet) -> bool:
    """True iff every edge of g shares an endpoint with some solution edge
    (solution edges dominate themselves)."""
    deg = _solution_degrees(g, solution)
    return all(deg[u] or deg[v] for u, v in g.edges)


def domination_count(g: Graph, solution: EdgeSet, edge_id: int) -> int:
    """Number of solution edges adjacent to or equal to the given edge."""
    if not 0 <= edge_id < g.m:
        raise ValueError(f"edge id {edge_id} out of range")
    u, v = g.edges[edge_id]
    deg = _solution_degrees(g, solution)
    # An edge incident to both u and v can only be (u,v) itself.
    return deg[u] + deg[v] - (1 if edge_id in solution else 0)


def _is_minimal_eds_mask(g: Graph, mask: int) -> bool:
    """Bitmask fast path: solution is dominating and every member edge has a
    neighbor (possibly itself) dominated exactly once."""
    nbr = g.edge_neighborhood_masks
    for e_nbr in nbr:
        if not e_nbr & mask:
            return False
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        e = low.bit_length() - 1
        cand = nbr[e]
        ok = False
        while cand:
            cl = cand & -cand
            cand ^= cl
            if (nbr[cl.bit_length() - 1] & mask).bit_count() == 1:
                ok = True
                break
        if not ok:
            return False
    return True


def is_minimal_eds(g: Graph, solution: EdgeSet) -> bool:
    """True iff the solution is an edge dominating set and every member edge
    has a private edge: some edge in its closed neighborhood dominated by
    exactly one solution edge."""
    return _is_minimal_eds_mask(g, solution.mask)


def greedy_maximal_matching(g: Graph, order: Sequence[int] | None = None) -> EdgeSet:
    """Scan edges in the given order (default: ascending edge id) and take
    every edge whose endpoints are both still unmatched.  Deterministic for a
    fixed order; the result is an inclusion-maximal matching."""
    if order is None:
        order = range(g.m)
    else:
        if sorted(order) != list(range(g.m)):
            raise ValueError("order must be a permutation of edge ids")
    matched = [False] * g.n
    mask = 0
    for eid in order:
        u, v = g.edges[eid]
        if not matched[u] and not matched[v]:
            matched[u] = True
            matched[v] = True
            mask |= 1 << eid
    return EdgeSet(mask)


def star_decomposition(g: Graph, solution: EdgeSet) -> StarStructure:
    """Decompose the subgraph (V, solution) into stars.

    Raises NotStarForest when two adjacent vertices both have solution-degree
    at least two (e.g. a path of three solution edges).
    """
    deg = _solution_degrees(g, solution)
    for eid in solution:
        u, v = g.edges[eid]
        if deg[u] >= 2 and deg[v] >= 2:
            raise NotStarForest(
                f"vertices {u + 1} and {v + 1} are adjacent and both have "
                f"solution degree >= 2"
            )
    by_center: dict[int, list[int]] = {}
    single: list[int] = []
    for eid in solution:
        u, v = g.edges[eid]
        if deg[u] >= 2:
            by_center.setdefault(u, []).append(eid)
        elif deg[v] >= 2:
            by_center.setdefault(v, []).append(eid)
        else:
            single.append(eid)
    stars = []
    for eid in single:
        u, v = g.edges[eid]
        a, b = (u, v) if u < v else (v, u)
        stars.append(Star(center=None, leaves=(a, b), edge_ids=(eid,)))
    for center in sorted(by_center):
        eids = sorted(by_center[center])
        leaves = tuple(
            sorted(u if u != center else v for u, v in (g.edges[e] for e in eids))
        )
        stars.append(Star(center=center, leaves=leaves, edge_ids=tuple(eids)))
    touched = set()
    for s in stars:
        touched.update(s.vertex_set)
    isolated = tuple(v for v in range(g.n) if v not in touched)
    return StarStructure(stars=tuple(stars), isolated=isolated)


def vertex_cover_from_matching(g: Graph, matching: EdgeSet) -> tuple[int, ...]:
    """Endpoints of a maximal matching, as a sorted vertex tuple.

    Raises CoverViolation if some edge of g has no endpoint in the result,
    which signals that the matching was not maximal.
    """
    cover = set()
    for eid in matching:
        u, v = g.edges[eid]
        cover.add(u)
        cover.add(v)
    for u, v in g.edges:
        if u not in cover and v not in cover:
            raise CoverViolation(
                f"edge ({u + 1}, {v + 1}) uncovered; matching is not maximal"
            )
    return tuple(sorted(cover))


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    """Subgraph induced by the kept vertices, relabeled consecutively in
    ascending original order.  Edge ids are reassigned in original edge order."""
    kept = sorted(set(keep))
    relabel = {v: i for i, v in enumerate(kept)}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges
        if u in relabel and v in relabel
    ]
    return Graph(len(kept), edges)
