"""Ground-truth enumeration of minimal edge dominating sets on small instances.

An edge set M dominates the graph iff it intersects the closed edge
neighborhood N[e] of every edge e, so minimal edge dominating sets are exactly
the minimal hitting sets of the hypergraph {N[e] : e in E}.  The enumerator
branches on the first undominated edge: each member of its neighborhood is
tried in turn, banning the previously tried members for the rest of that
subtree.  Every minimal set is produced exactly once; leaves that are
dominating but not minimal are filtered with the private-edge test.

A vectorized full scan over all 2^m subsets (`bitforce_minimal_masks`) is kept
as an independent second route; the two are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InstanceTooLarge
from .graph import EdgeSet, Graph, _is_minimal_eds_mask

__all__ = [
    "DEFAULT_EDGE_LIMIT",
    "BITFORCE_EDGE_LIMIT",
    "OracleResult",
    "enumerate_minimal_eds",
    "upper_eds_exact",
    "decide",
    "bitforce_minimal_masks",
]

DEFAULT_EDGE_LIMIT = 22
BITFORCE_EDGE_LIMIT = 22


@dataclass(frozen=True)
class OracleResult:
    """Exact answer for one instance.

    gamma_prime: maximum size of a minimal edge dominating set.
    witness: a minimal EDS attaining it (lexicographically smallest bitmask
        among the maximum-size ones, for reproducibility).
    count_minimal: how many minimal edge dominating sets exist.
    """

    gamma_prime: int
    witness: EdgeSet
    count_minimal: int


def _minimal_masks(g: Graph) -> list[int]:
    """All minimal-EDS bitmasks, ascending."""
    nbr = g.edge_neighborhood_masks
    m = g.m
    out: list[int] = []

    # Iterative DFS over (chosen, banned) pairs; each minimal hitting set is
    # reached along exactly one branch, so no dedup is needed.  Dominated-ness
    # only grows along a branch, so children resume the scan where the parent
    # stopped.
    stack: list[tuple[int, int, int]] = [(0, 0, 0)]
    while stack:
        mask, banned, start = stack.pop()
        for e in range(start, m):
            if not nbr[e] & mask:
                cand = nbr[e] & ~banned
                ban = banned
                while cand:
                    low = cand & -cand
                    cand ^= low
                    stack.append((mask | low, ban, e))
                    ban |= low
                break
        else:
            if _is_minimal_eds_mask(g, mask):
                out.append(mask)
    out.sort()
    return out


def bitforce_minimal_masks(g: Graph, limit: int = BITFORCE_EDGE_LIMIT) -> list[int]:
    """Ascending-bitmask scan of every subset of E, vectorized over numpy.

    Independent of the branching enumerator; intended for cross-validation.
    """
    if g.m > limit:
        raise InstanceTooLarge(f"m={g.m} exceeds bitforce limit {limit}")
    m = g.m
    if m == 0:
        return [0]
    dtype = np.uint32 if m <= 32 else np.uint64
    masks = np.arange(1 << m, dtype=dtype)
    nbr = g.edge_neighborhood_masks
    # dominated(e): mask intersects N[e]; private(e): exactly one member in N[e]
    eds = np.ones(masks.shape, dtype=bool)
    private = []
    for e in range(m):
        hits = np.bitwise_count(masks & dtype(nbr[e]))
        eds &= hits > 0
        private.append(hits == 1)
    minimal = eds.copy()
    for e in range(m):
        has_private = np.zeros(masks.shape, dtype=bool)
        cand = nbr[e]
        while cand:
            low = cand & -cand
            cand ^= low
            has_private |= private[low.bit_length() - 1]
        member = (masks >> dtype(e) & dtype(1)).astype(bool)
        minimal &= ~member | has_private
    return [int(x) for x in np.nonzero(minimal)[0]]


def enumerate_minimal_eds(
    g: Graph, limit: int = DEFAULT_EDGE_LIMIT
) -> Iterator[EdgeSet]:
    """Yield every minimal edge dominating set of g exactly once, in ascending
    bitmask order.  Raises InstanceTooLarge when m exceeds the limit."""
    if g.m > limit:
        raise InstanceTooLarge(f"m={g.m} exceeds enumeration limit {limit}")
    return (EdgeSet(mask) for mask in _minimal_masks(g))


def upper_eds_exact(g: Graph, limit: int = DEFAULT_EDGE_LIMIT) -> OracleResult:
    """Exact upper edge domination number with a witness.

    The edgeless graph has gamma_prime 0 witnessed by the empty set.
    """
    if g.m > limit:
        raise InstanceTooLarge(f"m={g.m} exceeds enumeration limit {limit}")
    masks = _minimal_masks(g)
    best_mask = 0
    best_size = 0
    for mask in masks:
        size = mask.bit_count()
        if size > best_size:
            best_size = size
            best_mask = mask
    return OracleResult(
        gamma_prime=best_size,
        witness=EdgeSet(best_mask),
        count_minimal=len(masks),
    )


def decide(g: Graph, k: int, limit: int = DEFAULT_EDGE_LIMIT) -> bool:
    """Does g have a minimal edge dominating set of size at least k?

    k <= 0 is vacuously true (the empty set never needs checking).
    """
    if k <= 0:
        return True
    return upper_eds_exact(g, limit).gamma_prime >= k
