"""Vectorized engine behind run_dp.

Implements exactly the recurrences of the tuple-level operations in ``dp`` but
stores each state packed into one int64 and processes whole tables as numpy
arrays.  Per vertex id v the key holds color bits [5v, 5v+2] and saturating
incidence bits [5v+3, 5v+4]; a parallel array holds the deficit between red
vertices seen and red vertices already certified by a black neighbor (the
root accepts at deficit zero).  The remaining tuple components need nothing:
beta stays zero because black-black edges are discarded outright, the
satisfied-vertex count always equals the number of forgets below the node,
and alpha rides in another parallel array of which only the per-state
maximum can ever reach a better answer.

On top of the always-on discards shared with the tuple engine (black-black
edges, uncertified red forgets, incidence overflow on purple/red), this
engine drops states in which a bag vertex can no longer reach its target
incidence with the edges still to be introduced above the current node.

Requires n <= MAX_N so the per-vertex fields fit one signed int64; run_dp
falls back to the tuple engine beyond that.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .decomposition import (
    FORGET,
    INTRODUCE,
    INTRODUCE_EDGE,
    JOIN,
    LEAF,
    NiceDecomposition,
)
from .errors import UedsError
from .graph import EdgeSet, Graph

MAX_N = 12  # 5 bits per vertex must stay below bit 63

_BLACK, _PURPLE, _GREEN, _RED0, _RED1 = range(5)


@dataclass
class FastTable:
    """One node's states: unique keys sorted ascending, the best alpha per
    key, and optional parallel back-reference arrays for witness walks.

    extras, per node kind: "back" = row into the (left) child table;
    "took" = included-edge flag (introduce-edge nodes); "back2" = row into
    the right child (join nodes).
    """

    keys: np.ndarray
    deficit: np.ndarray
    alpha: np.ndarray
    extras: dict[str, np.ndarray] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.keys)


def _dedupe(
    keys: np.ndarray, deficit: np.ndarray, alpha: np.ndarray, extras: dict
) -> FastTable:
    """Keep the maximum-alpha row per (key, deficit) pair; the earliest
    producer wins ties so results are deterministic."""
    if len(keys) == 0:
        return FastTable(keys, deficit.astype(np.int32), alpha.astype(np.int32), extras)
    order = np.lexsort((np.arange(len(keys)), -alpha, deficit, keys))
    sk = keys[order]
    sd = deficit[order]
    first = np.empty(len(sk), dtype=bool)
    first[0] = True
    np.not_equal(sk[1:], sk[:-1], out=first[1:])
    first[1:] |= sd[1:] != sd[:-1]
    sel = order[first]
    return FastTable(
        sk[first],
        sd[first].astype(np.int32),
        alpha[sel].astype(np.int32),
        {name: arr[sel] for name, arr in extras.items()},
    )


def _fields(keys: np.ndarray, v: int) -> tuple[np.ndarray, np.ndarray]:
    slot = keys >> np.int64(5 * v)
    return slot & 7, (slot >> 3) & 3


def _alive(color: np.ndarray, y: np.ndarray, remaining: int) -> np.ndarray:
    """Can this vertex still reach its color's target incidence given how many
    of its edges are yet to be introduced?  Black needs nothing (its incidence
    never grows), purple and red must end at exactly one, green at >= 2."""
    need_one = (color != _BLACK) & (color != _GREEN)
    return (
        (color == _BLACK)
        | (need_one & ((y == 1) | (remaining >= 1)))
        | ((color == _GREEN) & (y + remaining >= 2))
    )


def _remaining_above(g: Graph, nd: NiceDecomposition) -> list[dict[int, int]]:
    """Per node, for each vertex whose introduced-edge count changes there,
    how many of its incident edges are introduced OUTSIDE the node's subtree.
    Those are the hits a state's incidence can still receive on the way to
    the root (edges in a parallel join branch arrive via the join's sum, so
    they count as remaining).  Queried only at a vertex's introduce node and
    at its edges' nodes."""
    out: list[dict[int, int]] = [dict() for _ in nd.nodes]
    # per-vertex introduced-edge counts within each node's subtree; dicts are
    # shared with the child where the node cannot change them
    sub: list[dict[int, int]] = []
    for idx, node in enumerate(nd.nodes):
        if node.kind == LEAF:
            cnt: dict[int, int] = {}
        elif node.kind == INTRODUCE_EDGE:
            cnt = dict(sub[node.children[0]])
            u, v = node.edge
            cnt[u] = cnt.get(u, 0) + 1
            cnt[v] = cnt.get(v, 0) + 1
            out[idx][u] = g.degree(u) - cnt[u]
            out[idx][v] = g.degree(v) - cnt[v]
        elif node.kind == JOIN:
            left = sub[node.children[0]]
            right = sub[node.children[1]]
            cnt = dict(left)
            for v, c in right.items():
                cnt[v] = cnt.get(v, 0) + c
        else:
            cnt = sub[node.children[0]]
            if node.kind == INTRODUCE:
                v = node.vertex
                out[idx][v] = g.degree(v) - cnt.get(v, 0)
        sub.append(cnt)
    return out


def _leaf(keep: bool) -> FastTable:
    extras = {"back": np.zeros(1, dtype=np.int64)} if keep else {}
    return FastTable(
        np.zeros(1, dtype=np.int64),
        np.zeros(1, dtype=np.int32),
        np.zeros(1, dtype=np.int32),
        extras,
    )


def _introduce(child: FastTable, v: int, rem_v: int, keep: bool) -> FastTable:
    shift = np.int64(5 * v)
    keys = np.concatenate(
        [child.keys + (np.int64(color) << shift)
         for color in (_BLACK, _PURPLE, _GREEN, _RED0)]
    )
    # an uncertified red joins the deficit; the other colors leave it alone
    deficit = np.concatenate([child.deficit] * 3 + [child.deficit + 1])
    alpha = np.tile(child.alpha, 4)
    extras = {}
    if keep:
        extras["back"] = np.tile(np.arange(len(child.keys), dtype=np.int64), 4)
    color, y = _fields(keys, v)
    live = _alive(color, y, rem_v)
    return FastTable(
        keys[live],
        deficit[live],
        alpha[live],
        {name: arr[live] for name, arr in extras.items()},
    )


def _introduce_edge(
    child: FastTable, u: int, v: int, rem: dict[int, int], keep: bool
) -> FastTable:
    keys = child.keys
    cu, yu = _fields(keys, u)
    cv, yv = _fields(keys, v)
    su, sv = np.int64(5 * u), np.int64(5 * v)

    # excluded branch: drop black-black outright; an r0 endpoint whose
    # partner is black is certified, becoming r1 and shrinking the deficit
    not_bb = (cu != _BLACK) | (cv != _BLACK)
    up_u = ((cu == _RED0) & (cv == _BLACK)).astype(np.int64)
    up_v = ((cv == _RED0) & (cu == _BLACK)).astype(np.int64)
    ex_keys = (keys + (up_u << su) + (up_v << sv))[not_bb]
    ex_deficit = (child.deficit - up_u - up_v)[not_bb]
    ex_alpha = child.alpha[not_bb]

    # included branch: single-edge-star pair or center-leaf pair; a
    # purple/red endpoint may not exceed incidence one
    red_u = cu >= _RED0
    red_v = cv >= _RED0
    allowed = (
        ((cu == _PURPLE) & (cv == _PURPLE))
        | ((cu == _GREEN) & red_v)
        | ((cv == _GREEN) & red_u)
    )
    allowed &= ~((cu != _GREEN) & (yu >= 1)) & ~((cv != _GREEN) & (yv >= 1))
    bump = ((yu < 2).astype(np.int64) << (su + 3)) + (
        (yv < 2).astype(np.int64) << (sv + 3)
    )
    in_keys = (keys + bump)[allowed]
    in_deficit = child.deficit[allowed]
    in_alpha = child.alpha[allowed] + 1

    keys2 = np.concatenate([ex_keys, in_keys])
    deficit2 = np.concatenate([ex_deficit, in_deficit])
    alpha2 = np.concatenate([ex_alpha, in_alpha])
    extras: dict[str, np.ndarray] = {}
    if keep:
        rows = np.arange(len(child.keys), dtype=np.int64)
        extras["back"] = np.concatenate([rows[not_bb], rows[allowed]])
        extras["took"] = np.concatenate(
            [
                np.zeros(len(ex_keys), dtype=bool),
                np.ones(len(in_keys), dtype=bool),
            ]
        )
    # an endpoint that can no longer meet its target makes the state dead
    for w in (u, v):
        cw, yw = _fields(keys2, w)
        live = _alive(cw, yw, rem[w])
        keys2 = keys2[live]
        deficit2 = deficit2[live]
        alpha2 = alpha2[live]
        extras = {name: arr[live] for name, arr in extras.items()}
    return _dedupe(keys2, deficit2, alpha2, extras)


def _forget(child: FastTable, v: int, keep: bool) -> FastTable:
    cv, yv = _fields(child.keys, v)
    satisfied = (
        ((cv == _BLACK) & (yv == 0))
        | ((cv == _GREEN) & (yv == 2))
        | (((cv == _PURPLE) | (cv == _RED1)) & (yv == 1))
    )
    keys = child.keys[satisfied] & ~(np.int64(31) << np.int64(5 * v))
    deficit = child.deficit[satisfied]
    alpha = child.alpha[satisfied]
    extras = {}
    if keep:
        extras["back"] = np.nonzero(satisfied)[0].astype(np.int64)
    return _dedupe(keys, deficit, alpha, extras)


def _join(
    left: FastTable, right: FastTable, bag: tuple[int, ...], keep: bool
) -> FastTable:
    """Pair states whose base colors agree on every bag vertex (red flavors
    collapse for matching; the merged flavor is the maximum of the two).
    Incidences add with saturation; the deficit adds, corrected so each bag
    red vertex is counted once and counted as certified if either side
    certified it."""

    def base(keys: np.ndarray) -> np.ndarray:
        b = np.zeros_like(keys)
        for v in bag:
            c, _ = _fields(keys, v)
            b |= np.minimum(c, _RED0) << np.int64(5 * v)
        return b

    lbase = base(left.keys)
    rbase = base(right.keys)
    lorder = np.argsort(lbase, kind="stable")
    rorder = np.argsort(rbase, kind="stable")
    lb = lbase[lorder]
    rb = rbase[rorder]

    li_parts: list[np.ndarray] = []
    ri_parts: list[np.ndarray] = []
    i = j = 0
    while i < len(lb) and j < len(rb):
        if lb[i] < rb[j]:
            i += 1
        elif lb[i] > rb[j]:
            j += 1
        else:
            val = lb[i]
            i2 = i
            while i2 < len(lb) and lb[i2] == val:
                i2 += 1
            j2 = j
            while j2 < len(rb) and rb[j2] == val:
                j2 += 1
            li_parts.append(np.repeat(lorder[i:i2], j2 - j))
            ri_parts.append(np.tile(rorder[j:j2], i2 - i))
            i, j = i2, j2
    if li_parts:
        li = np.concatenate(li_parts)
        ri = np.concatenate(ri_parts)
    else:
        li = np.zeros(0, dtype=np.int64)
        ri = np.zeros(0, dtype=np.int64)

    lk = left.keys[li]
    rk = right.keys[ri]
    merged = np.zeros_like(lk)
    red_bag = np.zeros(len(lk), dtype=np.int64)
    both_r1 = np.zeros(len(lk), dtype=np.int64)
    for v in bag:
        c1, y1 = _fields(lk, v)
        c2, y2 = _fields(rk, v)
        color = np.maximum(c1, c2)
        y = np.minimum(y1 + y2, 2)
        merged |= (color | (y << 3)) << np.int64(5 * v)
        red_bag += c1 >= _RED0
        both_r1 += (c1 == _RED1) & (c2 == _RED1)
    deficit = left.deficit[li] + right.deficit[ri] - red_bag + both_r1
    alpha = left.alpha[li].astype(np.int64) + right.alpha[ri]
    extras = {"back": li, "back2": ri} if keep else {}
    return _dedupe(merged, deficit, alpha, extras)


def run_fast_dp(
    g: Graph, nd: NiceDecomposition, keep_tables: bool = False
) -> tuple[int, list[int], list[FastTable] | None, int]:
    """Evaluate all nodes; returns (gamma_prime, per-node table sizes, tables
    or None, accepting root row)."""
    if g.n > MAX_N:
        raise ValueError(f"fast engine supports n <= {MAX_N}")
    remaining = _remaining_above(g, nd)
    tables: list[FastTable | None] = []
    sizes: list[int] = []
    last_use = [0] * len(nd.nodes)
    for idx, node in enumerate(nd.nodes):
        for c in node.children:
            last_use[c] = idx
    for idx, node in enumerate(nd.nodes):
        if node.kind == LEAF:
            table = _leaf(keep_tables)
        elif node.kind == INTRODUCE:
            table = _introduce(
                tables[node.children[0]],
                node.vertex,
                remaining[idx][node.vertex],
                keep_tables,
            )
        elif node.kind == INTRODUCE_EDGE:
            u, v = node.edge
            table = _introduce_edge(
                tables[node.children[0]], u, v, remaining[idx], keep_tables
            )
        elif node.kind == FORGET:
            table = _forget(tables[node.children[0]], node.vertex, keep_tables)
        elif node.kind == JOIN:
            table = _join(
                tables[node.children[0]],
                tables[node.children[1]],
                node.bag,
                keep_tables,
            )
        else:
            raise UedsError(f"unknown node kind {node.kind!r}")
        tables.append(table)
        sizes.append(len(table))
        if not keep_tables:
            # free children no longer needed
            for c in node.children:
                if last_use[c] <= idx:
                    tables[c] = None

    root = tables[-1]
    accept = np.nonzero((root.keys == 0) & (root.deficit == 0))[0]
    if len(accept) == 0:
        raise UedsError(
            "no accepting state at the root; the decomposition does not "
            "cover the graph"
        )
    row = int(accept[0])
    gamma = int(root.alpha[row])
    return gamma, sizes, tables if keep_tables else None, row


def fast_witness(
    g: Graph, nd: NiceDecomposition, tables: list[FastTable], root_row: int
) -> EdgeSet:
    """Walk back-references from the accepting root row, collecting the edges
    taken on included introduce-edge branches."""
    mask = 0
    stack = [(nd.root, root_row)]
    while stack:
        idx, row = stack.pop()
        node = nd.nodes[idx]
        table = tables[idx]
        if node.kind == LEAF:
            continue
        if node.kind == JOIN:
            stack.append((node.children[0], int(table.extras["back"][row])))
            stack.append((node.children[1], int(table.extras["back2"][row])))
            continue
        if node.kind == INTRODUCE_EDGE and bool(table.extras["took"][row]):
            mask |= 1 << node.edge_id
        stack.append((node.children[0], int(table.extras["back"][row])))
    return EdgeSet(mask)
