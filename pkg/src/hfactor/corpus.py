"""Test corpora: small connected graphs and seeded random prescriptions."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .core import Graph, Prescription


@dataclass(frozen=True)
class Instance:
    graph: Graph
    H: Prescription
    label: str = ""


def _canonical(n: int, edges: list[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    best = None
    for perm in itertools.permutations(range(n)):
        relabelled = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v]))
                                  for u, v in edges))
        if best is None or relabelled < best:
            best = relabelled
    return best


def connected_graphs(n: int, labeled: bool = False) -> list[Graph]:
    """Connected graphs on ``n`` vertices.

    With ``labeled`` every labelled graph is returned; otherwise one
    canonical representative per isomorphism class. Order is deterministic.
    """
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    out: list[Graph] = []
    seen: set[tuple[tuple[int, int], ...]] = set()
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if not g.is_connected():
            continue
        if labeled:
            out.append(g)
            continue
        key = _canonical(n, edges)
        if key not in seen:
            seen.add(key)
            out.append(Graph(n, key))
    if not labeled:
        out.sort(key=lambda g: (g.m, g.edges))
    return out


def corpus_graphs(n_max: int, labeled: bool = False) -> list[Graph]:
    return [g for n in range(1, n_max + 1) for g in connected_graphs(n, labeled)]


def repair_gaps(values: set[int]) -> set[int]:
    """Fill runs of two or more missing integers so each gap misses one value."""
    values = set(values)
    ordered = sorted(values)
    for a, b in zip(ordered, ordered[1:]):
        for filler in range(a + 2, b, 2):
            values.add(filler)
    return values


def random_prescription(G: Graph, rng: random.Random,
                        ceiling: Optional[int] = None) -> Prescription:
    """Random subset of ``[0, d_G(x)+1]`` per vertex, repaired to have single gaps."""
    sets = {}
    for x in range(G.n):
        top = G.degree(x) + 1 if ceiling is None else ceiling
        chosen = {i for i in range(top + 1) if rng.random() < 0.5}
        if not chosen:
            chosen = {rng.randint(0, top)}
        sets[x] = repair_gaps(chosen)
    return Prescription(sets)


def random_connected_graph(n: int, rng: random.Random,
                           m_max: Optional[int] = None) -> Graph:
    """Edge probability 1/2, rejected until connected (and within ``m_max``)."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    while True:
        edges = [p for p in pairs if rng.random() < 0.5]
        if m_max is not None and len(edges) > m_max:
            continue
        g = Graph(n, edges)
        if g.is_connected():
            return g


def instance_rng(seed: int, *parts: object) -> random.Random:
    return random.Random("/".join(map(str, (seed, *parts))))


def exhaustive_corpus(n_max: int, per_graph: int, seed: int, labeled: bool = False,
                      ceiling: Optional[int] = None) -> Iterator[Instance]:
    for gi, g in enumerate(corpus_graphs(n_max, labeled)):
        rng = instance_rng(seed, g.n, g.edges)
        for j in range(per_graph):
            yield Instance(g, random_prescription(g, rng, ceiling), f"g{gi}/h{j}")


def random_corpus(count: int, n_max: int, m_max: Optional[int], seed: int,
                  ceiling: Optional[int] = None, n_min: int = 1) -> Iterator[Instance]:
    rng = instance_rng(seed, "random")
    for i in range(count):
        n = rng.randint(n_min, n_max)
        g = random_connected_graph(n, rng, m_max)
        yield Instance(g, random_prescription(g, rng, ceiling), f"r{i}")
