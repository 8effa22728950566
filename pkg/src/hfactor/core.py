"""Graphs, degree prescriptions and deficiency arithmetic.

Vertices are dense indices ``0..n-1``. Edge ``k`` always refers to the same
vertex pair, so subgraphs can be stored as integer bitmasks over edge ids
(bit ``k`` set means edge ``k`` is selected).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from typing import Optional


class InvalidInput(ValueError):
    """Raised for malformed graphs, prescriptions or vertex sets."""


class Graph:
    """Finite simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adjacency", "incident", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise InvalidInput(f"vertex count must be nonnegative, got {n}")
        self.n = n
        normalized: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        for pair in edges:
            u, v = (int(x) for x in pair)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in index:
                raise InvalidInput(f"duplicate edge {key}")
            index[key] = len(normalized)
            normalized.append(key)
        self.edges: tuple[tuple[int, int], ...] = tuple(normalized)
        self._index = index
        nbrs: list[list[int]] = [[] for _ in range(n)]
        inc: list[list[int]] = [[] for _ in range(n)]
        for k, (u, v) in enumerate(self.edges):
            nbrs[u].append(v)
            nbrs[v].append(u)
            inc[u].append(k)
            inc[v].append(k)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in nbrs)
        self.incident: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in inc)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def degree(self, x: int) -> int:
        return len(self.adjacency[x])

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.adjacency[x]

    def edge_id(self, u: int, v: int) -> int:
        try:
            return self._index[(min(u, v), max(u, v))]
        except KeyError:
            raise InvalidInput(f"no edge between {u} and {v}") from None

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def other_end(self, k: int, x: int) -> int:
        u, v = self.edges[k]
        return v if u == x else u

    def check_vertices(self, S: Iterable[int]) -> frozenset[int]:
        S = frozenset(S)
        bad = sorted(x for x in S if not 0 <= x < self.n)
        if bad:
            raise InvalidInput(f"unknown vertices {bad}")
        return S

    # -- queries -----------------------------------------------------------

    def components(self, removed: Iterable[int] = ()) -> list[tuple[int, ...]]:
        """Connected components of ``G - removed``, ordered by smallest vertex."""
        gone = self.check_vertices(removed)
        seen = set(gone)
        out: list[tuple[int, ...]] = []
        for start in range(self.n):
            if start in seen:
                continue
            seen.add(start)
            stack, comp = [start], [start]
            while stack:
                x = stack.pop()
                for y in self.adjacency[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def induced_components(self, S: Iterable[int]) -> list[tuple[int, ...]]:
        """Components of ``G[S]``."""
        S = self.check_vertices(S)
        return self.components(set(range(self.n)) - S)

    def induced_subgraph(self, S: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """``G[S]`` relabelled to ``0..|S|-1``; also returns the original labels."""
        labels = tuple(sorted(self.check_vertices(S)))
        pos = {x: i for i, x in enumerate(labels)}
        sub = [(pos[u], pos[v]) for (u, v) in self.edges if u in pos and v in pos]
        return Graph(len(labels), sub), labels

    def cross_edges(self, S: Iterable[int], T: Iterable[int]) -> list[int]:
        """Ids of edges with one end in ``S`` and the other in ``T``."""
        S = self.check_vertices(S)
        T = self.check_vertices(T)
        return [k for k, (u, v) in enumerate(self.edges)
                if (u in S and v in T) or (u in T and v in S)]

    def edges_to(self, x: int, Y: Iterable[int]) -> int:
        """``|E_G(x, Y)|``."""
        Y = Y if isinstance(Y, (set, frozenset)) else set(Y)
        return sum(1 for y in self.adjacency[x] if y in Y)

    def reduced_degree(self, x: int, S: Iterable[int]) -> int:
        """Degree of ``x`` in ``G - S``; neighbours inside ``S`` are dropped."""
        S = S if isinstance(S, (set, frozenset)) else set(S)
        return sum(1 for y in self.adjacency[x] if y not in S)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # -- named graphs ------------------------------------------------------

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, [(u, v) for u in range(n) for v in range(u + 1, n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls(10, outer + spokes + inner)


# -- prescription sets -------------------------------------------------------


def dist_to_set(d: int, H_set: Iterable[int]) -> int:
    """Distance from ``d`` to the nearest element of ``H_set``."""
    values = tuple(H_set)
    if not values:
        raise InvalidInput("distance to an empty set is undefined")
    return min(abs(d - h) for h in values)


def star_gaps(H_set: Iterable[int]) -> list[tuple[int, int]]:
    """Maximal runs ``(lo, hi)`` of missing integers of length at least two."""
    values = sorted(set(H_set))
    return [(a + 1, b - 1) for a, b in zip(values, values[1:]) if b - a > 2]


def validate_star_property(H_set: Iterable[int]) -> bool:
    """True iff every gap between consecutive elements misses exactly one integer."""
    values = tuple(H_set)
    if not values:
        raise InvalidInput("prescription set must be nonempty")
    return not star_gaps(values)


class Prescription(Mapping[int, tuple[int, ...]]):
    """Per-vertex allowed degree sets with the one-element-gap property.

    The domain is an arbitrary set of vertex ids so that restricted and
    shifted maps (defined only on ``V - X - Y`` or on one component) use the
    same type. Elements may be negative only when ``allow_negative`` is set;
    shifting produces such values and they are kept unclamped.
    """

    __slots__ = ("_sets",)

    def __init__(self, sets: Mapping[int, Iterable[int]], allow_negative: bool = False):
        normalized: dict[int, tuple[int, ...]] = {}
        for x in sorted(sets):
            values = tuple(sorted(set(int(h) for h in sets[x])))
            if not values:
                raise InvalidInput(f"empty prescription at vertex {x}")
            if not allow_negative and values[0] < 0:
                raise InvalidInput(f"negative value in prescription at vertex {x}")
            gaps = star_gaps(values)
            if gaps:
                lo, hi = gaps[0]
                raise InvalidInput(
                    f"prescription at vertex {x} has gap {{{', '.join(map(str, range(lo, hi + 1)))}}}"
                    " with more than one missing value")
            normalized[int(x)] = values
        self._sets = normalized

    @classmethod
    def uniform(cls, n: int, values: Iterable[int]) -> "Prescription":
        values = tuple(values)
        return cls({x: values for x in range(n)})

    @classmethod
    def interval(cls, n: int, lo: int, hi: int) -> "Prescription":
        return cls.uniform(n, range(lo, hi + 1))

    def __getitem__(self, x: int) -> tuple[int, ...]:
        return self._sets[x]

    def __iter__(self) -> Iterator[int]:
        return iter(self._sets)

    def __len__(self) -> int:
        return len(self._sets)

    def __repr__(self) -> str:
        return f"Prescription({self._sets})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Prescription):
            return self._sets == other._sets
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._sets.items()))

    def lo(self, x: int) -> int:
        return self._sets[x][0]

    def hi(self, x: int) -> int:
        return self._sets[x][-1]

    def lo_sum(self, S: Iterable[int]) -> int:
        return sum(self._sets[x][0] for x in S)

    def hi_sum(self, S: Iterable[int]) -> int:
        return sum(self._sets[x][-1] for x in S)

    def allows(self, x: int, d: int) -> bool:
        return d in self._sets[x]

    def is_interval(self, x: int) -> bool:
        values = self._sets[x]
        return values[-1] - values[0] + 1 == len(values)

    def translated(self, c: int) -> "Prescription":
        """Every set moved by ``c``; the shift notation ``H + c``."""
        return Prescription({x: [h + c for h in v] for x, v in self._sets.items()},
                            allow_negative=True)

    def relabel(self, labels: tuple[int, ...]) -> "Prescription":
        """Restrict to ``labels`` and rename ``labels[i]`` to ``i``."""
        return Prescription({i: self._sets[x] for i, x in enumerate(labels)},
                            allow_negative=True)

    def as_dict(self) -> dict[int, list[int]]:
        return {x: list(v) for x, v in self._sets.items()}


# -- spanning subgraphs ------------------------------------------------------


class SpanningSubgraph:
    """Edge subset of a host graph, kept as a bitmask with a live degree vector."""

    __slots__ = ("host", "mask", "degrees")

    def __init__(self, host: Graph, mask: int = 0):
        if mask < 0 or mask >> host.m:
            raise InvalidInput(f"mask {mask:#x} does not fit {host.m} edges")
        self.host = host
        self.mask = mask
        deg = [0] * host.n
        for k, (u, v) in enumerate(host.edges):
            if mask >> k & 1:
                deg[u] += 1
                deg[v] += 1
        self.degrees = deg

    @classmethod
    def from_edges(cls, host: Graph, pairs: Iterable[tuple[int, int]]) -> "SpanningSubgraph":
        mask = 0
        for u, v in pairs:
            mask |= 1 << host.edge_id(u, v)
        return cls(host, mask)

    @classmethod
    def from_ids(cls, host: Graph, ids: Iterable[int]) -> "SpanningSubgraph":
        mask = 0
        for k in ids:
            if not 0 <= k < host.m:
                raise InvalidInput(f"unknown edge id {k}")
            mask |= 1 << k
        return cls(host, mask)

    def __repr__(self) -> str:
        return f"SpanningSubgraph({self.edge_pairs()})"

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SpanningSubgraph) and self.host == other.host
                and self.mask == other.mask)

    def __hash__(self) -> int:
        return hash((self.host, self.mask))

    def copy(self) -> "SpanningSubgraph":
        out = SpanningSubgraph.__new__(SpanningSubgraph)
        out.host = self.host
        out.mask = self.mask
        out.degrees = list(self.degrees)
        return out

    def contains(self, k: int) -> bool:
        return bool(self.mask >> k & 1)

    @property
    def membership(self) -> list[bool]:
        return [bool(self.mask >> k & 1) for k in range(self.host.m)]

    def edge_ids(self) -> list[int]:
        return [k for k in range(self.host.m) if self.mask >> k & 1]

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [self.host.edges[k] for k in self.edge_ids()]

    def size(self) -> int:
        return bin(self.mask).count("1")

    def degree(self, x: int) -> int:
        return self.degrees[x]

    def toggle(self, k: int) -> None:
        u, v = self.host.edges[k]
        step = -1 if self.mask >> k & 1 else 1
        self.mask ^= 1 << k
        self.degrees[u] += step
        self.degrees[v] += step


def deficiency_of(F: SpanningSubgraph, H: Prescription,
                  S: Optional[Iterable[int]] = None) -> int:
    """Sum of ``dist(d_F(x), H(x))`` over ``S`` (all vertices by default)."""
    S = range(F.host.n) if S is None else F.host.check_vertices(S)
    missing = [x for x in S if x not in H]
    if missing:
        raise InvalidInput(f"prescription undefined at {sorted(missing)}")
    return sum(dist_to_set(F.degrees[x], H[x]) for x in S)


def is_h_factor(F: SpanningSubgraph, H: Prescription) -> bool:
    return all(F.degrees[x] in H[x] for x in range(F.host.n))


# -- modified prescriptions --------------------------------------------------


def shift_prescription(G: Graph, H: Prescription, X: Iterable[int],
                       Y: Iterable[int]) -> Prescription:
    """Prescription on ``V - X - Y`` with each set lowered by ``|E_G(u, Y)|``."""
    X = G.check_vertices(X)
    Y = G.check_vertices(Y)
    if X & Y:
        raise InvalidInput(f"X and Y overlap at {sorted(X & Y)}")
    return Prescription(
        {u: [h - G.edges_to(u, Y) for h in H[u]]
         for u in range(G.n) if u not in X and u not in Y},
        allow_negative=True)


def restrict_to_component(G: Graph, H_shifted: Prescription,
                          K: Iterable[int]) -> Prescription:
    """Restriction of a shifted map to ``K``, a component of ``G[domain]``."""
    K = tuple(sorted(G.check_vertices(K)))
    domain = set(H_shifted)
    if K not in G.induced_components(domain):
        raise InvalidInput(f"{list(K)} is not a component of the graph on {sorted(domain)}")
    return Prescription({u: H_shifted[u] for u in K}, allow_negative=True)
