"""End-to-end solving: greedy-matching early exit, optional kernelization,
then the decomposition dynamic program; plus the exact-value entry point that
picks between the enumeration oracle and the DP."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from .decomposition import make_nice, td_from_vertex_cover
from .dp import extract_witness, run_dp
from .errors import WidthCapExceeded
from .graph import (
    EdgeSet,
    Graph,
    greedy_maximal_matching,
    vertex_cover_from_matching,
)
from .kernel import DecidedYes, kernelize
from .oracle import DEFAULT_EDGE_LIMIT, upper_eds_exact

__all__ = ["DEFAULT_WIDTH_CAP", "SolveReport", "solve", "gamma_prime"]

DEFAULT_WIDTH_CAP = 14  # reject decompositions with width + 1 above this


@dataclass
class SolveReport:
    """Everything one run produced.  ``gamma_prime`` refers to the original
    graph; when kernelization transformed the instance the DP value lives in
    ``reduced_gamma_prime`` (for the reduced graph, against ``reduced_k``)
    and any witness is flagged via ``witness_on_reduced``."""

    instance: str
    stage: str
    k: int | None = None
    decision: bool | None = None
    gamma_prime: int | None = None
    reduced_gamma_prime: int | None = None
    reduced_k: int | None = None
    witness: list[tuple[int, int]] | None = None
    witness_on_reduced: bool = False
    method: str | None = None
    kernel: dict[str, Any] | None = None
    dp: dict[str, Any] | None = None
    oracle: dict[str, Any] | None = None
    timings_ms: dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {
            "instance": self.instance,
            "stage": self.stage,
            "k": self.k,
            "decision": self.decision,
            "gamma_prime": self.gamma_prime,
            "reduced_gamma_prime": self.reduced_gamma_prime,
            "reduced_k": self.reduced_k,
            "witness": [list(e) for e in self.witness] if self.witness is not None else None,
            "witness_on_reduced": self.witness_on_reduced,
            "method": self.method,
            "kernel": self.kernel,
            "dp": self.dp,
            "oracle": self.oracle,
        }
        if include_timings:
            out["timings_ms"] = self.timings_ms
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True, indent=2)


def _witness_pairs(g: Graph, solution: EdgeSet) -> list[tuple[int, int]]:
    """Solution edges as external 1-indexed endpoint pairs, ascending ids."""
    return [(u + 1, v + 1) for u, v in (g.edges[e] for e in solution)]


def _dp_stage(
    work: Graph, *, max_width: int, want_witness: bool, diagnostics: bool = False
) -> tuple[int, EdgeSet | None, dict[str, Any]]:
    matching = greedy_maximal_matching(work)
    cover = vertex_cover_from_matching(work, matching)
    td = td_from_vertex_cover(work, cover)
    if td.width + 1 > max_width:
        raise WidthCapExceeded(
            f"decomposition needs bags of size {td.width + 1}, above the cap "
            f"{max_width}; raise --max-width to proceed"
        )
    nd = make_nice(work, td)
    result = run_dp(work, nd, keep_tables=want_witness)
    witness = extract_witness(work, nd, result) if want_witness else None
    stats = {
        "width": nd.width,
        "nodes": len(nd.nodes),
        "max_table_size": result.max_table_size,
        "engine": result.engine,
    }
    if diagnostics:
        stats["diagnostics"] = result.diagnostics_lines()
    return result.gamma_prime, witness, stats


def solve(
    g: Graph,
    k: int,
    use_kernel: bool = True,
    want_witness: bool = False,
    max_width: int = DEFAULT_WIDTH_CAP,
    instance: str = "<graph>",
    diagnostics: bool = False,
) -> SolveReport:
    """Decide whether g has a minimal edge dominating set of size >= k.

    Pipeline: (1) a greedy maximal matching of size >= k settles it
    immediately (a maximal matching is a minimal edge dominating set);
    (2) kernelization, which may decide outright or shrink the instance;
    (3) the decomposition DP on what remains.  Kernel decisions carry no
    witness, so with want_witness a kernel-decided instance falls through to
    the DP on the original graph instead.
    """
    report = SolveReport(instance=instance, stage="", k=k)
    t_total = time.perf_counter()

    t0 = time.perf_counter()
    matching = greedy_maximal_matching(g)
    report.timings_ms["matching"] = (time.perf_counter() - t0) * 1000
    if matching.size >= k:
        report.stage = "matching-early-yes"
        report.decision = True
        report.witness = _witness_pairs(g, matching)
        report.timings_ms["total"] = (time.perf_counter() - t_total) * 1000
        return report

    work, work_k = g, k
    transformed = False
    if use_kernel:
        t0 = time.perf_counter()
        outcome = kernelize(g, k)
        report.timings_ms["kernel"] = (time.perf_counter() - t0) * 1000
        if isinstance(outcome, DecidedYes):
            report.kernel = {
                "decided": True,
                "rule": outcome.rule,
                "hint": outcome.hint,
                "trace": list(outcome.trace),
            }
            if not want_witness:
                report.stage = "kernel-decided"
                report.decision = True
                report.timings_ms["total"] = (time.perf_counter() - t_total) * 1000
                return report
            # fall through to the DP on the original graph for a witness
        else:
            report.kernel = {
                "decided": False,
                "n": outcome.graph.n,
                "m": outcome.graph.m,
                "k": outcome.k,
                "trace": list(outcome.trace),
            }
            work, work_k = outcome.graph, outcome.k
            transformed = bool(outcome.trace)

    t0 = time.perf_counter()
    gamma, witness, stats = _dp_stage(
        work, max_width=max_width, want_witness=want_witness, diagnostics=diagnostics
    )
    report.timings_ms["dp"] = (time.perf_counter() - t0) * 1000
    report.stage = "dp"
    report.dp = stats
    report.decision = gamma >= work_k
    if transformed:
        report.reduced_gamma_prime = gamma
        report.reduced_k = work_k
    else:
        report.gamma_prime = gamma
    if witness is not None:
        report.witness = _witness_pairs(work, witness)
        report.witness_on_reduced = transformed
    report.timings_ms["total"] = (time.perf_counter() - t_total) * 1000
    return report


def gamma_prime(
    g: Graph,
    method: str = "auto",
    max_width: int = DEFAULT_WIDTH_CAP,
    oracle_limit: int = DEFAULT_EDGE_LIMIT,
    instance: str = "<graph>",
    diagnostics: bool = False,
) -> SolveReport:
    """Exact upper edge domination number.

    method "oracle" enumerates (m <= oracle_limit), "dp" runs the
    decomposition program over a greedy-matching cover, "auto" picks the
    oracle for small edge counts and the DP otherwise.  Both methods agree
    wherever both apply; the test suite enforces that.
    """
    if method not in ("auto", "dp", "oracle"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        method = "oracle" if g.m <= oracle_limit else "dp"
    report = SolveReport(instance=instance, stage=method, method=method)
    t_total = time.perf_counter()
    if method == "oracle":
        result = upper_eds_exact(g, limit=oracle_limit)
        report.gamma_prime = result.gamma_prime
        report.witness = _witness_pairs(g, result.witness)
        report.oracle = {"count_minimal": result.count_minimal}
    else:
        t0 = time.perf_counter()
        gamma, witness, stats = _dp_stage(
            g, max_width=max_width, want_witness=True, diagnostics=diagnostics
        )
        report.timings_ms["dp"] = (time.perf_counter() - t0) * 1000
        report.gamma_prime = gamma
        report.witness = _witness_pairs(g, witness)
        report.dp = stats
    report.timings_ms["total"] = (time.perf_counter() - t_total) * 1000
    return report
