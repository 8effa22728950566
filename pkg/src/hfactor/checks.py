"""Catalog of cross-checks run on one instance.

Each check compares an independently computed quantity against the
exhaustive oracle, or asserts a structural property of every qualifying
subgraph (H-optimal with no H-optimal proper edge subset). A check returns
a list of violations, or None when it does not apply to the instance.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional

import numpy as np

from .core import (Graph, Prescription, SpanningSubgraph, deficiency_of,
                   shift_prescription)
from .formula import (DEFAULT_DUAL_N_CAP, DualWitness, ShiftFn,
                      all_dual_witnesses, dual_witness, structural_deficiency)
from .oracle import (DEFAULT_EDGE_CAP, degree_table, lovasz_partition,
                     optimal_masks, total_deficiency)
from .trails import (DEFAULT_TRAIL_EDGE_CAP, TrailPartition,
                     find_augmenting_trail, trail_partition)


class Skip(Exception):
    """A check cannot run on this instance (cap exceeded or not applicable)."""


@dataclass(frozen=True)
class Violation:
    check: str
    message: str
    subgraph: Optional[int] = None  # edge mask of the offending F, if any


def _mis_shift(G: Graph, H: Prescription, X: Iterable[int], Y: Iterable[int]) -> Prescription:
    # Deliberately wrong: lowers by edges into X instead of Y.
    X, Y = frozenset(X), frozenset(Y)
    return Prescription({u: [h - G.edges_to(u, X) for h in H[u]]
                         for u in range(G.n) if u not in X and u not in Y},
                        allow_negative=True)


def _no_shift(G: Graph, H: Prescription, X: Iterable[int], Y: Iterable[int]) -> Prescription:
    X, Y = frozenset(X), frozenset(Y)
    return Prescription({u: H[u] for u in range(G.n) if u not in X and u not in Y},
                        allow_negative=True)


# Corrupted shift functions for the negative-control harness.
MUTATIONS: dict[str, ShiftFn] = {
    "shift-wrong-side": _mis_shift,
    "no-shift": _no_shift,
}


@dataclass
class Caps:
    oracle_edges: int = DEFAULT_EDGE_CAP
    trail_edges: int = DEFAULT_TRAIL_EDGE_CAP
    dual_vertices: int = DEFAULT_DUAL_N_CAP


@dataclass
class CheckContext:
    """Lazily computed shared data for all checks on one instance."""

    graph: Graph
    H: Prescription
    caps: Caps = field(default_factory=Caps)
    shift: ShiftFn = shift_prescription
    only_subgraph: Optional[int] = None  # restrict per-F checks (replay)

    def require_oracle(self) -> None:
        if self.graph.m > self.caps.oracle_edges:
            raise Skip(f"cap: {self.graph.m} edges > oracle cap {self.caps.oracle_edges}")

    def require_trails(self) -> None:
        self.require_oracle()
        if self.graph.m > self.caps.trail_edges:
            raise Skip(f"cap: {self.graph.m} edges > trail cap {self.caps.trail_edges}")

    def require_dual(self) -> None:
        self.require_oracle()
        if self.graph.n > self.caps.dual_vertices:
            raise Skip(f"cap: {self.graph.n} vertices > dual cap {self.caps.dual_vertices}")

    @cached_property
    def value(self) -> int:
        self.require_oracle()
        return total_deficiency(self.graph, self.H, self.caps.oracle_edges)[0]

    @cached_property
    def optimal(self) -> np.ndarray:
        self.require_oracle()
        return optimal_masks(self.graph, self.H, cap=self.caps.oracle_edges)

    def _filtered(self, masks: np.ndarray) -> list[SpanningSubgraph]:
        if self.only_subgraph is not None:
            masks = [m for m in masks if m == self.only_subgraph]
        return [SpanningSubgraph(self.graph, int(m)) for m in masks]

    @cached_property
    def qualifying(self) -> list[SpanningSubgraph]:
        self.require_oracle()
        return self._filtered(optimal_masks(self.graph, self.H, minimal=True,
                                            cap=self.caps.oracle_edges))

    @cached_property
    def bounded_optimal(self) -> list[SpanningSubgraph]:
        self.require_oracle()
        return self._filtered(optimal_masks(self.graph, self.H, bounded=True,
                                            cap=self.caps.oracle_edges))

    @cached_property
    def lovasz(self):
        self.require_oracle()
        return lovasz_partition(self.graph, self.H, cap=self.caps.oracle_edges)

    @cached_property
    def partitions(self) -> list[tuple[SpanningSubgraph, TrailPartition]]:
        self.require_trails()
        return [(F, trail_partition(self.graph, self.H, F, self.caps.trail_edges))
                for F in self.qualifying]

    @cached_property
    def dual(self) -> list[DualWitness]:
        self.require_dual()
        return list(all_dual_witnesses(self.graph, self.H, self.caps.dual_vertices,
                                       self.shift, self.caps.oracle_edges))


CheckFn = Callable[[CheckContext], Optional[list[Violation]]]
CHECKS: dict[str, tuple[str, CheckFn]] = {}


def check(name: str, description: str):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = (description, fn)
        return fn
    return register


def _fmt(S: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(S))) + "}"


@check("duality", "total deficiency equals the max over disjoint (S,T)")
def _duality(ctx: CheckContext):
    best = max(w.value for w in ctx.dual)
    if best != ctx.value:
        return [Violation("duality", f"oracle {ctx.value} != dual max {best}")]
    return []


@check("weak_duality", "every (S,T) value is at most the total deficiency")
def _weak_duality(ctx: CheckContext):
    return [Violation("weak_duality",
                      f"S={_fmt(w.S)} T={_fmt(w.T)} value {w.value} > oracle {ctx.value}")
            for w in ctx.dual if w.value > ctx.value]


@check("no_augmenting_trail", "no optimal F with d_F <= MH has an augmenting trail")
def _no_augmenting(ctx: CheckContext):
    ctx.require_trails()
    out = []
    for F in ctx.bounded_optimal:
        P = find_augmenting_trail(ctx.graph, ctx.H, F, ctx.caps.trail_edges)
        if P is not None:
            out.append(Violation("no_augmenting_trail",
                                 f"augmenting trail {list(P.vertices)}", F.mask))
    return out


@check("class_degrees", "d_F <= mH on B and d_F = MH on A for the partition's F")
def _class_degrees(ctx: CheckContext):
    out = []
    H = ctx.H
    for F, tp in ctx.partitions:
        for v in tp.B:
            if F.degrees[v] > H.lo(v):
                out.append(Violation("class_degrees", f"B vertex {v} has d_F > mH", F.mask))
        for v in tp.A:
            if F.degrees[v] != H.hi(v):
                out.append(Violation("class_degrees", f"A vertex {v} has d_F != MH", F.mask))
    return out


@check("component_deficiency", "each D-component has deficiency at most 1")
def _component_deficiency(ctx: CheckContext):
    out = []
    for F, tp in ctx.partitions:
        for K in tp.components:
            d = deficiency_of(F, ctx.H, K)
            if d > 1:
                out.append(Violation("component_deficiency",
                                     f"component {_fmt(K)} has deficiency {d}", F.mask))
    return out


def _boundary_counts(G: Graph, F: SpanningSubgraph, K, tp: TrailPartition) -> tuple[int, int]:
    missed_b = sum(1 for k in G.cross_edges(K, tp.B) if not F.contains(k))
    held_a = sum(1 for k in G.cross_edges(K, tp.A) if F.contains(k))
    return missed_b, held_a


@check("deficient_component_edges",
       "a deficient D-component has all edges to B in F and none to A")
def _deficient_component_edges(ctx: CheckContext):
    out = []
    for F, tp in ctx.partitions:
        for K in tp.components:
            if deficiency_of(F, ctx.H, K) != 1:
                continue
            missed_b, held_a = _boundary_counts(ctx.graph, F, K, tp)
            if missed_b or held_a:
                out.append(Violation(
                    "deficient_component_edges",
                    f"component {_fmt(K)}: {missed_b} B-edges missed, {held_a} A-edges held",
                    F.mask))
    return out


@check("class_edges", "E(B,B+C) in F, E(A,A+C) disjoint from F, E(D,C) empty")
def _class_edges(ctx: CheckContext):
    G = ctx.graph
    out = []
    for F, tp in ctx.partitions:
        for k in G.cross_edges(tp.B, tp.B | tp.C):
            if not F.contains(k):
                out.append(Violation("class_edges", f"edge {G.edges[k]} in E(B,B+C) not in F",
                                     F.mask))
        for k in G.cross_edges(tp.A, tp.A | tp.C):
            if F.contains(k):
                out.append(Violation("class_edges", f"edge {G.edges[k]} in E(A,A+C) is in F",
                                     F.mask))
        for k in G.cross_edges(tp.D, tp.C):
            out.append(Violation("class_edges", f"edge {G.edges[k]} joins D and C", F.mask))
    return out


@check("component_boundary",
       "F misses at most one D-to-B edge and holds at most one D-to-A edge, exclusively; "
       "each component is deficient, missing or holding exactly once")
def _component_boundary(ctx: CheckContext):
    out = []
    for F, tp in ctx.partitions:
        for K in tp.components:
            missed_b, held_a = _boundary_counts(ctx.graph, F, K, tp)
            deficient = deficiency_of(F, ctx.H, K)
            problem = None
            if missed_b > 1 or held_a > 1:
                problem = f"{missed_b} B-edges missed, {held_a} A-edges held"
            elif missed_b and held_a:
                problem = "misses a B-edge and holds an A-edge"
            elif (deficient == 1) + missed_b + held_a != 1:
                problem = (f"deficiency {deficient}, {missed_b} missed, {held_a} held: "
                           "not exactly one kind")
            if problem:
                out.append(Violation("component_boundary", f"component {_fmt(K)}: {problem}",
                                     F.mask))
    return out


@check("structural_identity", "tau + sum_B(mH - d_{G-A}) - MH(A) equals the total deficiency")
def _structural_identity(ctx: CheckContext):
    out = []
    for F, tp in ctx.partitions:
        got = structural_deficiency(ctx.graph, ctx.H, tp)
        if got != ctx.value:
            out.append(Violation("structural_identity",
                                 f"structural value {got} != oracle {ctx.value}", F.mask))
    return out


@check("component_optimality",
       "F restricted to each D-component is optimal with deficiency 1 under the (A,B) shift")
def _component_optimality(ctx: CheckContext):
    G = ctx.graph
    out = []
    for F, tp in ctx.partitions:
        shifted = shift_prescription(G, ctx.H, tp.A, tp.B)
        for K in tp.components:
            sub, labels = G.induced_subgraph(K)
            HK = shifted.relabel(labels)
            inner = SpanningSubgraph.from_edges(
                sub, [(labels.index(u), labels.index(v)) for u, v in F.edge_pairs()
                      if u in K and v in K])
            have = deficiency_of(inner, HK)
            best = total_deficiency(sub, HK, ctx.caps.oracle_edges)[0]
            if have != 1 or best != 1:
                out.append(Violation(
                    "component_optimality",
                    f"component {_fmt(K)}: F_i deficiency {have}, optimum {best}", F.mask))
    return out


@check("dual_bridge", "(S,T)=(A,B) attains the dual value with tau_H(A,B)=tau")
def _dual_bridge(ctx: CheckContext):
    ctx.require_dual()
    out = []
    for F, tp in ctx.partitions:
        w = dual_witness(ctx.graph, ctx.H, tp.A, tp.B, ctx.shift, ctx.caps.oracle_edges)
        s = structural_deficiency(ctx.graph, ctx.H, tp)
        if w.tau != tp.tau or w.value != s:
            out.append(Violation("dual_bridge",
                                 f"tau_H(A,B)={w.tau} vs tau={tp.tau}; value {w.value} vs {s}",
                                 F.mask))
    return out


@check("degree_bounds", "every optimal R: d_R in H on C, >= MH on A, <= mH on B")
def _degree_bounds(ctx: CheckContext):
    H = ctx.H
    rows = degree_table(ctx.graph)[ctx.optimal]
    out = []
    for F, tp in ctx.partitions:
        for v in sorted(tp.C):
            if not np.isin(rows[:, v], H[v]).all():
                out.append(Violation("degree_bounds", f"C vertex {v} infeasible in some R", F.mask))
        for v in sorted(tp.A):
            if (rows[:, v] < H.hi(v)).any():
                out.append(Violation("degree_bounds", f"A vertex {v} below MH in some R", F.mask))
        for v in sorted(tp.B):
            if (rows[:, v] > H.lo(v)).any():
                out.append(Violation("degree_bounds", f"B vertex {v} above mH in some R", F.mask))
    return out


@check("partition_equivalence", "trail partition equals the spectrum partition")
def _partition_equivalence(ctx: CheckContext):
    lp = ctx.lovasz
    out = []
    for F, tp in ctx.partitions:
        if tp.classes() != lp.classes():
            names = "ABCD"
            diff = "; ".join(f"{n}: {_fmt(a)} vs {_fmt(b)}"
                             for n, a, b in zip(names, tp.classes(), lp.classes()) if a != b)
            out.append(Violation("partition_equivalence", diff, F.mask))
    return out


@check("interval_rule", "a vertex whose set is an interval of 2+ values is not in D")
def _interval_rule(ctx: CheckContext):
    H = ctx.H
    out = []
    for F, tp in ctx.partitions:
        for v in sorted(tp.D):
            if H.is_interval(v) and len(H[v]) >= 2:
                out.append(Violation("interval_rule", f"interval vertex {v} in D", F.mask))
    return out


def max_matching_size(G: Graph) -> int:
    """Largest matching by plain recursion over edges (independent of the oracle)."""
    best = 0

    def grow(start: int, used: frozenset[int], size: int) -> None:
        nonlocal best
        best = max(best, size)
        for k in range(start, G.m):
            u, v = G.edges[k]
            if u not in used and v not in used:
                grow(k + 1, used | {u, v}, size + 1)

    grow(0, frozenset(), 0)
    return best


@check("matching_specialization", "for H = {1} everywhere, deficiency is n - 2*nu")
def _matching(ctx: CheckContext):
    if any(ctx.H[x] != (1,) for x in range(ctx.graph.n)):
        return None
    nu = max_matching_size(ctx.graph)
    if ctx.value != ctx.graph.n - 2 * nu:
        return [Violation("matching_specialization",
                          f"oracle {ctx.value} != n - 2nu = {ctx.graph.n - 2 * nu}")]
    return []


@dataclass(frozen=True)
class Verdict:
    check: str
    status: str  # "pass", "fail" or "skip"
    reason: str = ""
    violations: tuple[Violation, ...] = ()


def run_checks(ctx: CheckContext, names: Optional[Iterable[str]] = None) -> list[Verdict]:
    out = []
    for name in (names or CHECKS):
        _, fn = CHECKS[name]
        try:
            found = fn(ctx)
        except Skip as exc:
            out.append(Verdict(name, "skip", str(exc)))
            continue
        if found is None:
            out.append(Verdict(name, "skip", "not applicable"))
        elif found:
            out.append(Verdict(name, "fail", found[0].message, tuple(found)))
        else:
            out.append(Verdict(name, "pass"))
    return out
