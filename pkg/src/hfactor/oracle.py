"""Exhaustive ground truth over all ``2^m`` spanning subgraphs.

Subgraph ``i`` is the edge set whose bitmask is ``i``; enumeration order is
ascending mask, so "first" always means smallest mask.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import Graph, Prescription, SpanningSubgraph

DEFAULT_EDGE_CAP = 22


class InstanceTooLarge(RuntimeError):
    """An exhaustive routine was asked to exceed its configured cap."""


def _check_cap(G: Graph, cap: int) -> None:
    if G.m > cap:
        raise InstanceTooLarge(
            f"instance too large for oracle: {G.m} edges exceeds cap {cap}")


@lru_cache(maxsize=256)
def _degree_table(n: int, edges: tuple[tuple[int, int], ...]) -> np.ndarray:
    """Row ``mask`` holds the degree vector of subgraph ``mask``."""
    table = np.zeros((1, n), dtype=np.int16)
    for u, v in edges:
        step = np.zeros(n, dtype=np.int16)
        step[u] = step[v] = 1
        table = np.concatenate([table, table + step])
    table.setflags(write=False)
    return table


def degree_table(G: Graph) -> np.ndarray:
    return _degree_table(G.n, G.edges)


def _dist_lookup(G: Graph, H: Prescription, x: int) -> np.ndarray:
    values = np.asarray(H[x])
    d = np.arange(G.degree(x) + 1)
    return np.abs(d[:, None] - values[None, :]).min(axis=1)


def deficiency_vector(G: Graph, H: Prescription, cap: int = DEFAULT_EDGE_CAP) -> np.ndarray:
    """``def_H[F]`` for every subgraph, indexed by mask."""
    _check_cap(G, cap)
    table = degree_table(G)
    total = np.zeros(table.shape[0], dtype=np.int32)
    for x in range(G.n):
        total += _dist_lookup(G, H, x)[table[:, x]]
    return total


def factor_vector(G: Graph, H: Prescription, cap: int = DEFAULT_EDGE_CAP) -> np.ndarray:
    """Boolean per mask: is that subgraph an H-factor."""
    _check_cap(G, cap)
    table = degree_table(G)
    ok = np.ones(table.shape[0], dtype=bool)
    for x in range(G.n):
        allowed = np.isin(np.arange(G.degree(x) + 1), H[x])
        ok &= allowed[table[:, x]]
    return ok


def total_deficiency(G: Graph, H: Prescription,
                     cap: int = DEFAULT_EDGE_CAP) -> tuple[int, SpanningSubgraph]:
    """Exact ``def_H(G)`` and the smallest-mask minimizer."""
    defs = deficiency_vector(G, H, cap)
    best = int(np.argmin(defs))
    return int(defs[best]), SpanningSubgraph(G, best)


def has_H_factor(G: Graph, H: Prescription, cap: int = DEFAULT_EDGE_CAP) -> bool:
    """Whether some spanning subgraph is an H-factor.

    ``H`` may carry negative values (from shifting); no degree matches them.
    """
    return bool(factor_vector(G, H, cap).any())


def _has_proper_subset(flags: np.ndarray, m: int) -> np.ndarray:
    """``out[mask]`` is true iff some proper subset of ``mask`` is flagged."""
    closure = flags.copy()
    for k in range(m):
        view = closure.reshape(-1, 2, 1 << k)
        view[:, 1, :] |= view[:, 0, :]
    below = np.zeros_like(flags)
    for k in range(m):
        src = closure.reshape(-1, 2, 1 << k)
        dst = below.reshape(-1, 2, 1 << k)
        dst[:, 1, :] |= src[:, 0, :]
    return below


def optimal_masks(G: Graph, H: Prescription, minimal: bool = False,
                  bounded: bool = False, cap: int = DEFAULT_EDGE_CAP) -> np.ndarray:
    """Sorted masks of H-optimal subgraphs, optionally filtered.

    ``minimal`` keeps only subgraphs with no optimal proper edge subset;
    ``bounded`` keeps only those with ``d_F(v) <= MH(v)`` everywhere.
    """
    defs = deficiency_vector(G, H, cap)
    opt = defs == defs.min()
    keep = opt.copy()
    if minimal:
        keep &= ~_has_proper_subset(opt, G.m)
    if bounded:
        table = degree_table(G)
        for x in range(G.n):
            keep &= table[:, x] <= H.hi(x)
    return np.flatnonzero(keep)


def enumerate_optimal(G: Graph, H: Prescription, minimal: bool = False,
                      bounded: bool = False,
                      cap: int = DEFAULT_EDGE_CAP) -> list[SpanningSubgraph]:
    return [SpanningSubgraph(G, int(mask))
            for mask in optimal_masks(G, H, minimal, bounded, cap)]


@dataclass(frozen=True)
class SpectrumTable:
    """Degrees realized at each vertex by H-optimal subgraphs."""

    spectra: tuple[frozenset[int], ...]
    optimal_count: int
    min_deficiency: int

    def __getitem__(self, x: int) -> frozenset[int]:
        return self.spectra[x]


def degree_spectra(G: Graph, H: Prescription, minimal: bool = False,
                   cap: int = DEFAULT_EDGE_CAP) -> SpectrumTable:
    defs = deficiency_vector(G, H, cap)
    masks = optimal_masks(G, H, minimal=minimal, cap=cap)
    rows = degree_table(G)[masks]
    spectra = tuple(frozenset(int(d) for d in np.unique(rows[:, x])) for x in range(G.n))
    return SpectrumTable(spectra, len(masks), int(defs.min()))


@dataclass(frozen=True)
class LovaszPartition:
    """Classification of vertices by their optimal degree spectra."""

    C: frozenset[int]
    A: frozenset[int]
    B: frozenset[int]
    D: frozenset[int]
    spectra: SpectrumTable = field(compare=False, repr=False)

    def classes(self) -> tuple[frozenset[int], ...]:
        return (self.A, self.B, self.C, self.D)


def lovasz_partition(G: Graph, H: Prescription, minimal: bool = False,
                     cap: int = DEFAULT_EDGE_CAP) -> LovaszPartition:
    """Partition by spectra, tested in the order C, A, B, then the remainder.

    With ``minimal`` the spectra are taken over edge-minimal optimal
    subgraphs only; the default uses every optimal subgraph.
    """
    table = degree_spectra(G, H, minimal=minimal, cap=cap)
    C, A, B, D = set(), set(), set(), set()
    for x in range(G.n):
        spectrum = table[x]
        if spectrum <= set(H[x]):
            C.add(x)
        elif min(spectrum) >= H.hi(x):
            A.add(x)
        elif max(spectrum) <= H.lo(x):
            B.add(x)
        else:
            D.add(x)
    return LovaszPartition(frozenset(C), frozenset(A), frozenset(B), frozenset(D), table)
