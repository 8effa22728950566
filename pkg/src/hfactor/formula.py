"""Both deficiency formulas: the max over disjoint vertex pairs and the
structural identity read off a trail partition."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

from .core import Graph, InvalidInput, Prescription, shift_prescription
from .oracle import DEFAULT_EDGE_CAP, InstanceTooLarge, has_H_factor
from .trails import TrailPartition

DEFAULT_DUAL_N_CAP = 12

ShiftFn = Callable[[Graph, Prescription, Iterable[int], Iterable[int]], Prescription]


@dataclass(frozen=True)
class DualWitness:
    S: frozenset[int]
    T: frozenset[int]
    tau: int
    value: int
    deficient_components: tuple[tuple[int, ...], ...]

    def to_dict(self) -> dict:
        return {"S": sorted(self.S), "T": sorted(self.T), "tau": self.tau,
                "value": self.value,
                "deficient_components": [list(c) for c in self.deficient_components]}


@lru_cache(maxsize=65536)
def _component_has_factor(n: int, edges: tuple[tuple[int, int], ...],
                          sets: tuple[tuple[int, ...], ...], cap: int) -> bool:
    return has_H_factor(Graph(n, edges), Prescription(dict(enumerate(sets)),
                                                      allow_negative=True), cap)


def tau_count(G: Graph, H: Prescription, S: Iterable[int], T: Iterable[int],
              shift: ShiftFn = shift_prescription,
              cap: int = DEFAULT_EDGE_CAP) -> tuple[int, list[tuple[int, ...]]]:
    """Components of ``G - S - T`` with no factor under the shifted, restricted map."""
    S = G.check_vertices(S)
    T = G.check_vertices(T)
    if S & T:
        raise InvalidInput(f"S and T overlap at {sorted(S & T)}")
    shifted = shift(G, H, S, T)
    bad = []
    for K in G.components(S | T):
        sub, labels = G.induced_subgraph(K)
        try:
            ok = _component_has_factor(sub.n, sub.edges,
                                       tuple(shifted[x] for x in labels), cap)
        except InstanceTooLarge as exc:
            raise InstanceTooLarge(f"component {list(K)}: {exc}") from None
        if not ok:
            bad.append(K)
    return len(bad), bad


def dual_witness(G: Graph, H: Prescription, S: Iterable[int], T: Iterable[int],
                 shift: ShiftFn = shift_prescription,
                 cap: int = DEFAULT_EDGE_CAP) -> DualWitness:
    S = G.check_vertices(S)
    T = G.check_vertices(T)
    tau, comps = tau_count(G, H, S, T, shift, cap)
    value = (tau - sum(G.reduced_degree(x, S) for x in T)
             - H.hi_sum(S) + H.lo_sum(T))
    return DualWitness(S, T, tau, value, tuple(comps))


def lovasz_rhs(G: Graph, H: Prescription, S: Iterable[int], T: Iterable[int],
               shift: ShiftFn = shift_prescription, cap: int = DEFAULT_EDGE_CAP) -> int:
    """``tau_H(S,T) - sum_{x in T} d_{G-S}(x) - MH(S) + mH(T)``."""
    return dual_witness(G, H, S, T, shift, cap).value


def disjoint_pairs(n: int) -> Iterator[tuple[frozenset[int], frozenset[int]]]:
    """All ordered pairs of disjoint subsets of ``0..n-1`` by base-3 counting."""
    for states in itertools.product((0, 1, 2), repeat=n):
        yield (frozenset(x for x, s in enumerate(states) if s == 1),
               frozenset(x for x, s in enumerate(states) if s == 2))


def all_dual_witnesses(G: Graph, H: Prescription, n_cap: int = DEFAULT_DUAL_N_CAP,
                       shift: ShiftFn = shift_prescription,
                       cap: int = DEFAULT_EDGE_CAP) -> Iterator[DualWitness]:
    if G.n > n_cap:
        raise InstanceTooLarge(f"dual sweep refused: {G.n} vertices exceeds cap {n_cap}")
    for S, T in disjoint_pairs(G.n):
        yield dual_witness(G, H, S, T, shift, cap)


def _tie_key(w: DualWitness) -> tuple:
    return (-w.value, len(w.S) + len(w.T), tuple(sorted(w.S)), tuple(sorted(w.T)))


def max_dual(G: Graph, H: Prescription, n_cap: int = DEFAULT_DUAL_N_CAP,
             shift: ShiftFn = shift_prescription,
             cap: int = DEFAULT_EDGE_CAP) -> DualWitness:
    """Maximizing pair; ties go to the smallest ``|S|+|T|``, then lexicographic S, T."""
    return min(all_dual_witnesses(G, H, n_cap, shift, cap), key=_tie_key)


def has_factor_criterion(G: Graph, H: Prescription,
                         n_cap: int = DEFAULT_DUAL_N_CAP) -> bool:
    return max_dual(G, H, n_cap).value <= 0


def structural_deficiency(G: Graph, H: Prescription, partition: TrailPartition) -> int:
    """``tau + sum_{v in B}(mH(v) - d_{G-A}(v)) - MH(A)`` for a trail partition."""
    A = partition.A
    return (partition.tau
            + sum(H.lo(v) - G.reduced_degree(v, A) for v in partition.B)
            - H.hi_sum(A))
