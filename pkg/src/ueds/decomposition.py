"""Tree decompositions and their nice form.

A tree decomposition built from a vertex cover C places the bags C + {v} for
every vertex v outside C on a path, which gives width |C| at worst.  The nice
form rewrites any valid decomposition into a rooted tree of leaf,
introduce-vertex, introduce-edge, forget and join nodes with empty root and
leaf bags, introducing every edge of the graph exactly once.

Nodes of a NiceDecomposition are stored in evaluation order: every node's
children have smaller indices, the root is the last node.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import (
    DecompositionFormatError,
    InvalidDecomposition,
    NotACover,
)
from .graph import Graph

__all__ = [
    "TreeDecomposition",
    "NiceNode",
    "NiceDecomposition",
    "LEAF",
    "INTRODUCE",
    "INTRODUCE_EDGE",
    "FORGET",
    "JOIN",
    "td_from_vertex_cover",
    "validate_td",
    "make_nice",
    "validate_nice",
    "parse_td",
    "emit_td",
    "emit_nice",
]

LEAF = "leaf"
INTRODUCE = "introduce"
INTRODUCE_EDGE = "introduce-edge"
FORGET = "forget"
JOIN = "join"


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags indexed 0..b-1 plus an undirected tree over the bag indices.

    ``n`` is the vertex count of the decomposed graph (0-indexed vertices).
    """

    n: int
    bags: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    def neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


@dataclass(frozen=True)
class NiceNode:
    """One node of a nice decomposition.

    kind        one of leaf / introduce / introduce-edge / forget / join
    bag         sorted vertex tuple after this node's operation
    children    indices of child nodes (always smaller than this node's index)
    vertex      the introduced/forgotten vertex for introduce and forget nodes
    edge        (u, v) endpoints for introduce-edge nodes
    edge_id     edge id in the graph for introduce-edge nodes
    """

    kind: str
    bag: tuple[int, ...]
    children: tuple[int, ...] = ()
    vertex: int | None = None
    edge: tuple[int, int] | None = None
    edge_id: int | None = None


@dataclass
class NiceDecomposition:
    nodes: list[NiceNode] = field(default_factory=list)

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max(len(node.bag) for node in self.nodes) - 1

    def count(self, kind: str) -> int:
        return sum(1 for node in self.nodes if node.kind == kind)


def td_from_vertex_cover(g: Graph, cover: Iterable[int]) -> TreeDecomposition:
    """Path decomposition with bags {cover + v : v outside the cover}.

    Raises NotACover when some edge has neither endpoint in the cover.  The
    width is at most |cover|; when the cover already contains every vertex the
    decomposition is the single bag equal to the cover.
    """
    cov = sorted(set(cover))
    cov_set = set(cov)
    if not all(0 <= v < g.n for v in cov):
        raise NotACover("cover contains out-of-range vertices")
    for u, v in g.edges:
        if u not in cov_set and v not in cov_set:
            raise NotACover(f"edge ({u + 1}, {v + 1}) has no endpoint in the cover")
    rest = [v for v in range(g.n) if v not in cov_set]
    if not rest:
        bags = (tuple(cov),) if cov else ()
        return TreeDecomposition(n=g.n, bags=bags, tree_edges=())
    bags = tuple(tuple(sorted(cov + [v])) for v in rest)
    tree_edges = tuple((i, i + 1) for i in range(len(bags) - 1))
    return TreeDecomposition(n=g.n, bags=bags, tree_edges=tree_edges)


def validate_td(g: Graph, td: TreeDecomposition) -> list[str]:
    """All violations of the three decomposition properties (plus tree-ness).

    Empty list means the decomposition is valid.  Violations are returned as
    data, naming the failing vertex, edge or node.
    """
    violations: list[str] = []
    b = len(td.bags)
    if td.n != g.n:
        violations.append(f"decomposition is for n={td.n}, graph has n={g.n}")
    for i, bag in enumerate(td.bags):
        for v in bag:
            if not 0 <= v < g.n:
                violations.append(f"bag {i} contains out-of-range vertex {v + 1}")
    for a, c in td.tree_edges:
        if not (0 <= a < b and 0 <= c < b):
            violations.append(f"tree edge ({a}, {c}) references missing bag")
            return violations
    # tree-ness: connected with exactly b-1 edges
    if b > 0:
        if len(td.tree_edges) != b - 1:
            violations.append(
                f"tree has {len(td.tree_edges)} edges for {b} bags; expected {b - 1}"
            )
        adj = td.neighbors()
        seen = {0}
        queue = [0]
        while queue:
            x = queue.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != b:
            violations.append("decomposition tree is disconnected")
    elif g.n > 0:
        violations.append("no bags but the graph has vertices")
        return violations
    # property (i): vertex coverage
    covered: set[int] = set()
    for bag in td.bags:
        covered.update(bag)
    for v in range(g.n):
        if v not in covered:
            violations.append(f"vertex {v + 1} appears in no bag")
    # property (ii): edge coverage
    bag_sets = [set(bag) for bag in td.bags]
    for u, v in g.edges:
        if not any(u in s and v in s for s in bag_sets):
            violations.append(f"edge ({u + 1}, {v + 1}) is contained in no bag")
    # property (iii): interpolation -- bags containing v form a subtree
    if b > 0 and len(td.tree_edges) == b - 1 and len(seen) == b:
        adj = td.neighbors()
        for v in range(g.n):
            holders = [i for i, s in enumerate(bag_sets) if v in s]
            if len(holders) <= 1:
                continue
            holder_set = set(holders)
            reach = {holders[0]}
            queue = [holders[0]]
            while queue:
                x = queue.pop()
                for y in adj[x]:
                    if y in holder_set and y not in reach:
                        reach.add(y)
                        queue.append(y)
            if reach != holder_set:
                violations.append(
                    f"bags containing vertex {v + 1} are disconnected in the tree"
                )
    return violations


class _NiceBuilder:
    """Accumulates nice nodes bottom-up; children always precede parents."""

    def __init__(self, g: Graph, edge_placement: str):
        self.g = g
        self.nodes: list[NiceNode] = []
        self.introduced: set[int] = set()
        self.edge_placement = edge_placement
        # edge id lookup by endpoint pair
        self.eid: dict[tuple[int, int], int] = {}
        for i, (u, v) in enumerate(g.edges):
            self.eid[(u, v)] = i
            self.eid[(v, u)] = i

    def add(self, node: NiceNode) -> int:
        self.nodes.append(node)
        return len(self.nodes) - 1

    def leaf(self) -> int:
        return self.add(NiceNode(kind=LEAF, bag=()))

    def introduce(self, top: int, bag: tuple[int, ...], v: int) -> int:
        new_bag = tuple(sorted(bag + (v,)))
        idx = self.add(
            NiceNode(kind=INTRODUCE, bag=new_bag, children=(top,), vertex=v)
        )
        if self.edge_placement == "early":
            idx = self._introduce_edges_at(idx, new_bag, v)
        return idx

    def _introduce_edges_at(self, top: int, bag: tuple[int, ...], v: int) -> int:
        """Introduce all pending edges between v and the rest of the bag."""
        bag_set = set(bag)
        pending = [
            (eid, u)
            for u, eid in self.g.adj[v]
            if u in bag_set and eid not in self.introduced
        ]
        for eid, u in sorted(pending):
            self.introduced.add(eid)
            top = self.add(
                NiceNode(
                    kind=INTRODUCE_EDGE,
                    bag=bag,
                    children=(top,),
                    edge=self.g.edges[eid],
                    edge_id=eid,
                )
            )
        return top

    def forget(self, top: int, bag: tuple[int, ...], v: int) -> tuple[int, tuple[int, ...]]:
        if self.edge_placement == "late":
            top = self._introduce_edges_at(top, bag, v)
        new_bag = tuple(x for x in bag if x != v)
        idx = self.add(
            NiceNode(kind=FORGET, bag=new_bag, children=(top,), vertex=v)
        )
        return idx, new_bag

    def adapt(self, top: int, from_bag: tuple[int, ...], to_bag: tuple[int, ...]) -> int:
        """Morph the bag from from_bag to to_bag with forgets then introduces."""
        bag = from_bag
        target = set(to_bag)
        for v in sorted(set(from_bag) - target):
            top, bag = self.forget(top, bag, v)
        for v in sorted(target - set(from_bag)):
            top = self.introduce(top, bag, v)
            bag = tuple(sorted(bag + (v,)))
        return top

    def chain_from_empty(self, bag: tuple[int, ...]) -> int:
        top = self.leaf()
        built: tuple[int, ...] = ()
        for v in bag:
            top = self.introduce(top, built, v)
            built = tuple(sorted(built + (v,)))
        return top

    def join(self, left: int, right: int, bag: tuple[int, ...]) -> int:
        return self.add(NiceNode(kind=JOIN, bag=bag, children=(left, right)))


def make_nice(
    g: Graph, td: TreeDecomposition, edge_placement: str = "early"
) -> NiceDecomposition:
    """Rewrite a valid tree decomposition into nice form.

    Every edge is introduced exactly once, at a node whose bag contains both
    endpoints and below the forget nodes of both.  With ``edge_placement`` set
    to "early" (the default) an edge appears immediately above the introduce
    node at which its endpoints first share a bag; "late" defers it to just
    below the first forget of one of its endpoints.  Both satisfy every
    validity requirement; early placement keeps dynamic-programming tables
    small because edge constraints start pruning states as soon as possible.

    The width is unchanged and the node count is O(n * width + m).
    """
    if edge_placement not in ("early", "late"):
        raise ValueError(f"unknown edge placement {edge_placement!r}")
    violations = validate_td(g, td)
    if violations:
        raise InvalidDecomposition(
            "input decomposition is invalid: " + "; ".join(violations[:5])
        )
    builder = _NiceBuilder(g, edge_placement)
    if not td.bags:
        builder.leaf()
        return NiceDecomposition(nodes=builder.nodes)

    # Iterative postorder over the decomposition tree rooted at bag 0.
    adj = td.neighbors()
    order: list[tuple[int, int]] = []  # (node, parent)
    stack = [(0, -1)]
    seen = {0}
    while stack:
        node, parent = stack.pop()
        order.append((node, parent))
        for nxt in adj[node]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append((nxt, node))
    tops: dict[int, int] = {}
    for node, parent in reversed(order):
        bag = td.bags[node]
        child_tops = [
            builder.adapt(tops[c], td.bags[c], bag)
            for c in adj[node]
            if c != parent and c in tops
        ]
        if not child_tops:
            top = builder.chain_from_empty(bag)
        else:
            top = child_tops[0]
            for other in child_tops[1:]:
                top = builder.join(top, other, bag)
        tops[node] = top

    top = builder.adapt(tops[0], td.bags[0], ())
    if len(builder.introduced) != g.m:
        missing = sorted(set(range(g.m)) - builder.introduced)
        raise InvalidDecomposition(
            f"internal: edges never introduced: {missing[:5]}"
        )
    if builder.nodes[-1].bag:
        raise InvalidDecomposition("internal: root bag not empty")
    return NiceDecomposition(nodes=builder.nodes)


def validate_nice(g: Graph, nd: NiceDecomposition) -> list[str]:
    """All violations of the nice-decomposition invariants; empty means valid."""
    violations: list[str] = []
    nodes = nd.nodes
    if not nodes:
        return ["decomposition has no nodes"]
    used_as_child: set[int] = set()
    forgotten: dict[int, int] = {}
    introduced_edges: dict[int, int] = {}
    appeared: set[int] = set()
    for idx, node in enumerate(nodes):
        appeared.update(node.bag)
        if tuple(sorted(set(node.bag))) != node.bag:
            violations.append(f"node {idx}: bag not sorted and duplicate-free")
        for c in node.children:
            if not 0 <= c < idx:
                violations.append(f"node {idx}: child {c} does not precede it")
                return violations
            if c in used_as_child:
                violations.append(f"node {idx}: child {c} has two parents")
            used_as_child.add(c)
        if node.kind == LEAF:
            if node.children or node.bag:
                violations.append(f"node {idx}: leaf must have no children and empty bag")
        elif node.kind == INTRODUCE:
            if len(node.children) != 1 or node.vertex is None:
                violations.append(f"node {idx}: malformed introduce node")
                continue
            child_bag = nodes[node.children[0]].bag
            if node.vertex in child_bag or set(node.bag) != set(child_bag) | {node.vertex}:
                violations.append(
                    f"node {idx}: introduce of {node.vertex + 1} does not extend child bag"
                )
        elif node.kind == FORGET:
            if len(node.children) != 1 or node.vertex is None:
                violations.append(f"node {idx}: malformed forget node")
                continue
            child_bag = nodes[node.children[0]].bag
            if node.vertex not in child_bag or set(node.bag) != set(child_bag) - {node.vertex}:
                violations.append(
                    f"node {idx}: forget of {node.vertex + 1} does not shrink child bag"
                )
            forgotten[node.vertex] = forgotten.get(node.vertex, 0) + 1
        elif node.kind == INTRODUCE_EDGE:
            if len(node.children) != 1 or node.edge is None or node.edge_id is None:
                violations.append(f"node {idx}: malformed introduce-edge node")
                continue
            child_bag = nodes[node.children[0]].bag
            if node.bag != child_bag:
                violations.append(f"node {idx}: introduce-edge changes the bag")
            u, v = node.edge
            if not (0 <= node.edge_id < g.m) or set(g.edges[node.edge_id]) != {u, v}:
                violations.append(f"node {idx}: edge id/endpoints mismatch")
                continue
            if u not in node.bag or v not in node.bag:
                violations.append(
                    f"node {idx}: edge ({u + 1}, {v + 1}) endpoints not in bag"
                )
            introduced_edges[node.edge_id] = introduced_edges.get(node.edge_id, 0) + 1
        elif node.kind == JOIN:
            if len(node.children) != 2:
                violations.append(f"node {idx}: join must have two children")
                continue
            b1 = nodes[node.children[0]].bag
            b2 = nodes[node.children[1]].bag
            if node.bag != b1 or node.bag != b2:
                violations.append(f"node {idx}: join bags differ from children")
        else:
            violations.append(f"node {idx}: unknown kind {node.kind!r}")
    root = nd.root
    if root in used_as_child:
        violations.append("root node is a child of another node")
    if len(used_as_child) != len(nodes) - 1:
        violations.append("decomposition is not a single tree")
    if nodes[root].bag:
        violations.append("root bag is not empty")
    for v in range(g.n):
        if v not in appeared:
            violations.append(f"vertex {v + 1} appears in no bag")
        count = forgotten.get(v, 0)
        if v in appeared and count != 1:
            violations.append(f"vertex {v + 1} forgotten {count} times; expected 1")
    for eid in range(g.m):
        count = introduced_edges.get(eid, 0)
        if count != 1:
            u, v = g.edges[eid]
            violations.append(
                f"edge ({u + 1}, {v + 1}) introduced {count} times; expected exactly once"
            )
    return violations


def parse_td(text: str | Iterable[str]) -> TreeDecomposition:
    """Parse the PACE .td exchange format.

    Header "s td <#bags> <width+1> <n>", bag lines "b <id> <v...>" (1-indexed
    ids and vertices), then tree edges "<id> <id>".  Raises
    DecompositionFormatError with a line number on malformed input.
    """
    if isinstance(text, str):
        lines: Iterable[tuple[int, str]] = enumerate(text.splitlines(), start=1)
    else:
        lines = enumerate(text, start=1)
    num_bags = -1
    width_plus1 = -1
    n = -1
    bags: dict[int, tuple[int, ...]] = {}
    tree_edges: list[tuple[int, int]] = []
    for lineno, raw in lines:
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if num_bags >= 0:
                raise DecompositionFormatError("duplicate header", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise DecompositionFormatError(f"malformed header {line!r}", lineno)
            try:
                num_bags, width_plus1, n = int(parts[2]), int(parts[3]), int(parts[4])
            except ValueError:
                raise DecompositionFormatError("non-integer header field", lineno)
            if num_bags < 0 or n < 0:
                raise DecompositionFormatError("negative counts in header", lineno)
            continue
        if num_bags < 0:
            raise DecompositionFormatError("content before header", lineno)
        if parts[0] == "b":
            if len(parts) < 2:
                raise DecompositionFormatError("bag line without id", lineno)
            try:
                bag_id = int(parts[1])
                verts = [int(x) for x in parts[2:]]
            except ValueError:
                raise DecompositionFormatError("non-integer in bag line", lineno)
            if not 1 <= bag_id <= num_bags:
                raise DecompositionFormatError(f"bag id {bag_id} out of range", lineno)
            if bag_id in bags:
                raise DecompositionFormatError(f"duplicate bag id {bag_id}", lineno)
            for v in verts:
                if not 1 <= v <= n:
                    raise DecompositionFormatError(
                        f"bag {bag_id} references vertex {v} outside 1..{n}", lineno
                    )
            if len(set(verts)) != len(verts):
                raise DecompositionFormatError(f"bag {bag_id} repeats a vertex", lineno)
            bags[bag_id] = tuple(sorted(v - 1 for v in verts))
            continue
        if len(parts) != 2:
            raise DecompositionFormatError(f"malformed tree edge {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise DecompositionFormatError("non-integer tree edge", lineno)
        if not (1 <= a <= num_bags and 1 <= b <= num_bags):
            raise DecompositionFormatError(f"tree edge ({a}, {b}) out of range", lineno)
        tree_edges.append((a - 1, b - 1))
    if num_bags < 0:
        raise DecompositionFormatError("missing header")
    if len(bags) != num_bags:
        raise DecompositionFormatError(
            f"declared {num_bags} bags but found {len(bags)}"
        )
    ordered = tuple(bags[i] for i in range(1, num_bags + 1))
    td = TreeDecomposition(n=n, bags=ordered, tree_edges=tuple(tree_edges))
    if num_bags > 0 and td.width + 1 != width_plus1:
        raise DecompositionFormatError(
            f"header declares max bag size {width_plus1}, bags give {td.width + 1}"
        )
    return td


def emit_td(td: TreeDecomposition) -> str:
    """Serialize to the PACE .td format; parse_td(emit_td(t)) is isomorphic to t."""
    out = [f"s td {len(td.bags)} {td.width + 1 if td.bags else 0} {td.n}"]
    for i, bag in enumerate(td.bags, start=1):
        out.append("b " + " ".join([str(i)] + [str(v + 1) for v in bag]))
    for a, b in td.tree_edges:
        out.append(f"{a + 1} {b + 1}")
    return "\n".join(out) + "\n"


def emit_nice(nd: NiceDecomposition) -> str:
    """Serialize a nice decomposition as one line per node in evaluation order.

    Format (not a PACE standard): header "s ntd <#nodes> <width+1>",
    then lines "<id> leaf", "<id> introduce <v> <child>",
    "<id> forget <v> <child>", "<id> introduce-edge <u> <v> <child>" or
    "<id> join <c1> <c2>", all ids 1-indexed.  Bags are implied: a leaf bag is
    empty and every other node's bag follows from its children and operation.
    The last node is the root.
    """
    out = [f"s ntd {len(nd.nodes)} {nd.width + 1}"]
    for idx, node in enumerate(nd.nodes, start=1):
        if node.kind == LEAF:
            out.append(f"{idx} leaf")
        elif node.kind == INTRODUCE:
            out.append(f"{idx} introduce {node.vertex + 1} {node.children[0] + 1}")
        elif node.kind == FORGET:
            out.append(f"{idx} forget {node.vertex + 1} {node.children[0] + 1}")
        elif node.kind == INTRODUCE_EDGE:
            u, v = node.edge
            out.append(f"{idx} introduce-edge {u + 1} {v + 1} {node.children[0] + 1}")
        else:
            out.append(f"{idx} join {node.children[0] + 1} {node.children[1] + 1}")
    return "\n".join(out) + "\n"
