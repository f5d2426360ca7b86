"""Deterministic instance generation.

Randomness comes from splitmix64 so any implementation can reproduce the
stream: the state advances by 0x9E3779B97F4A7C15 per draw and each output is
the advanced state mixed by two xor-shift-multiply rounds
(0xBF58476D1CE4E5B9 after a 30-bit shift, 0x94D049BB133111EB after 27) and a
final 31-bit xor-shift.  The seed is the initial state, used as-is.

gnp graphs draw one value per vertex pair (u, v), u < v, in lexicographic
order, and keep the edge iff the draw is below floor(p * 2^64).  Random trees
decode a uniform-ish sequence (each entry one draw modulo n) through the
standard sequence-to-tree bijection.  Identical GenSpecs therefore yield
byte-identical serialized graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GenSpecError
from .graph import Graph

__all__ = ["SplitMix64", "GenSpec", "gen"]

_MASK = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator; deterministic 64-bit stream for a seed."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK


FAMILIES = ("gnp", "path", "cycle", "star", "tree")


@dataclass(frozen=True)
class GenSpec:
    """What to generate; equal specs generate identical graphs."""

    family: str
    n: int
    p: float | None = None
    seed: int = 0

    @property
    def instance_id(self) -> str:
        if self.family == "gnp":
            return f"gnp-n{self.n}-p{self.p}-s{self.seed}"
        if self.family == "tree":
            return f"tree-n{self.n}-s{self.seed}"
        return f"{self.family}-n{self.n}"


def _decode_tree(seq: list[int], n: int) -> list[tuple[int, int]]:
    """Standard linear decoding of a length n-2 vertex sequence into the
    edge list of a labeled tree on n vertices."""
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges: list[tuple[int, int]] = []
    ptr = 0
    while degree[ptr] != 1:
        ptr += 1
    leaf = ptr
    for x in seq:
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1 and x < ptr:
            leaf = x
        else:
            ptr += 1
            while degree[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n - 1))
    return edges


def gen(spec: GenSpec) -> Graph:
    """Build the graph a GenSpec describes.  Raises GenSpecError on invalid
    parameters (unknown family, n < 1, cycle below 3 vertices, p outside
    [0, 1])."""
    if spec.family not in FAMILIES:
        raise GenSpecError(f"unknown family {spec.family!r}")
    if spec.n < 1:
        raise GenSpecError(f"n must be >= 1, got {spec.n}")
    n = spec.n
    if spec.family == "path":
        return Graph(n, [(i, i + 1) for i in range(n - 1)])
    if spec.family == "cycle":
        if n < 3:
            raise GenSpecError("a cycle needs at least 3 vertices")
        return Graph(n, [(i, (i + 1) % n) for i in range(n)])
    if spec.family == "star":
        return Graph(n, [(0, i) for i in range(1, n)])
    if spec.family == "tree":
        if n <= 2:
            return Graph(n, [(0, 1)] if n == 2 else [])
        rng = SplitMix64(spec.seed)
        seq = [rng.next_u64() % n for _ in range(n - 2)]
        return Graph(n, _decode_tree(seq, n))
    # gnp
    if spec.p is None or not 0.0 <= spec.p <= 1.0:
        raise GenSpecError(f"gnp needs an edge probability in [0, 1], got {spec.p}")
    threshold = int(spec.p * 2**64)
    rng = SplitMix64(spec.seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.next_u64() < threshold
    ]
    return Graph(n, edges)
