"""Changeable trails: validation, augmenting search and the canonical partition.

A changeable trail starts at a vertex short of its lower bound, leaves it by
an edge outside ``F``, and keeps every vertex it passes through (other than
the start and the current end) feasible both before and after the edges of
the trail are flipped. The start vertex may be revisited only while the flip
still strictly lowers its deficiency. All of this must hold for every prefix.

The search is exhaustive depth-first over edge-distinct extensions, so its
cost is exponential in the number of edges; a cap guards it.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Optional

from .core import (Graph, InvalidInput, Prescription, SpanningSubgraph,
                   dist_to_set)
from .oracle import InstanceTooLarge

DEFAULT_TRAIL_EDGE_CAP = 16


class TrailSearchTooLarge(InstanceTooLarge):
    """Trail search refused; the caller should fall back to the oracle."""


@dataclass(frozen=True)
class ChangeableTrail:
    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]
    in_f: tuple[bool, ...]

    @classmethod
    def along(cls, F: SpanningSubgraph, vertices: list[int] | tuple[int, ...]) -> "ChangeableTrail":
        """Trail through ``vertices`` in ``F``'s host, flags read from ``F``."""
        G = F.host
        ids = tuple(G.edge_id(a, b) for a, b in zip(vertices, vertices[1:]))
        return cls(tuple(vertices), ids, tuple(F.contains(k) for k in ids))

    def __len__(self) -> int:
        return len(self.edge_ids)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def is_odd(self) -> bool:
        return bool(self.in_f) and not self.in_f[-1]

    @property
    def parity(self) -> str:
        return "odd" if self.is_odd else "even"

    def prefix(self, length: int) -> "ChangeableTrail":
        return ChangeableTrail(self.vertices[:length + 1], self.edge_ids[:length],
                               self.in_f[:length])

    def check_structure(self, G: Graph) -> None:
        if len(self.vertices) != len(self.edge_ids) + 1 or len(self.in_f) != len(self.edge_ids):
            raise InvalidInput("trail needs one more vertex than edges and one flag per edge")
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise InvalidInput("trail repeats an edge")
        for i, k in enumerate(self.edge_ids):
            if not 0 <= k < G.m or set(G.edges[k]) != {self.vertices[i], self.vertices[i + 1]}:
                raise InvalidInput(f"edge {k} at position {i} does not join "
                                   f"{self.vertices[i]} and {self.vertices[i + 1]}")

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "edges": list(self.edge_ids),
                "parity": self.parity}


def compute_B0(F: SpanningSubgraph, H: Prescription) -> frozenset[int]:
    """Vertices whose degree is below the prescription's minimum.

    For an edge-minimal ``F`` this coincides with the set of infeasible
    vertices; for other ``F`` it may be smaller.
    """
    return frozenset(x for x in range(F.host.n) if F.degrees[x] < H.lo(x))


def apply_trail(F: SpanningSubgraph, P: ChangeableTrail) -> SpanningSubgraph:
    """``F`` with every edge of ``P`` toggled (a new object)."""
    P.check_structure(F.host)
    for i, (k, flag) in enumerate(zip(P.edge_ids, P.in_f)):
        if F.contains(k) != flag:
            raise InvalidInput(
                f"flag mismatch at position {i}: edge {k} recorded as "
                f"{'in' if flag else 'not in'} F but F disagrees")
    out = F.copy()
    for k in P.edge_ids:
        out.toggle(k)
    return out


@dataclass(frozen=True)
class TrailCheck:
    valid: bool
    condition: Optional[str] = None
    position: Optional[int] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.valid


def _step_violation(H: Prescription, F: SpanningSubgraph, delta: list[int], v0: int,
                    cur: int, nxt: int) -> Optional[tuple[str, str]]:
    """Conditions for the trail just extended from ``cur`` to ``nxt``.

    Every earlier prefix is assumed valid, so only ``cur`` (which has become
    interior) and the start vertex need rechecking. ``delta`` already
    includes the new edge.
    """
    d = F.degrees
    if cur != v0:
        if d[cur] not in H[cur]:
            return "b", f"interior vertex {cur} infeasible in F (degree {d[cur]})"
        if d[cur] + delta[cur] not in H[cur]:
            return "b", (f"interior vertex {cur} infeasible after flipping "
                         f"(degree {d[cur] + delta[cur]})")
    if nxt != v0:
        before = dist_to_set(d[v0], H[v0])
        after = dist_to_set(d[v0] + delta[v0], H[v0])
        if after >= before:
            return "c", f"start vertex {v0} deficiency {before} -> {after} does not drop"
    return None


def is_changeable_trail(F: SpanningSubgraph, H: Prescription, P: ChangeableTrail) -> TrailCheck:
    """Check the trail and all of its prefixes; report the first violation."""
    G = F.host
    P.check_structure(G)
    v0 = P.start
    if F.degrees[v0] >= H.lo(v0):
        return TrailCheck(False, "a", 0, f"start vertex {v0} is not short of its minimum")
    delta = [0] * G.n
    for i, (k, flag) in enumerate(zip(P.edge_ids, P.in_f)):
        if F.contains(k) != flag:
            return TrailCheck(False, "flags", i, f"edge {k} flag disagrees with F")
        if i == 0 and flag:
            return TrailCheck(False, "a", 0, f"first edge {k} belongs to F")
        cur, nxt = P.vertices[i], P.vertices[i + 1]
        step = -1 if flag else 1
        delta[cur] += step
        delta[nxt] += step
        bad = _step_violation(H, F, delta, v0, cur, nxt)
        if bad:
            return TrailCheck(False, bad[0], i + 1, bad[1])
    return TrailCheck(True)


# -- exhaustive search -------------------------------------------------------

# Visitor receives (vertices, edge ids, delta) of each valid trail of length
# >= 1 and returns True to stop the search.
_Visitor = Callable[[list[int], list[int], list[int]], bool]


def _check_trail_cap(G: Graph, cap: int) -> None:
    if G.m > cap:
        raise TrailSearchTooLarge(
            f"trail search refused: {G.m} edges exceeds cap {cap}; use the oracle path")


def _search_from(G: Graph, H: Prescription, F: SpanningSubgraph, v0: int,
                 visit: _Visitor) -> bool:
    """Pre-order DFS over changeable trails rooted at ``v0``.

    Extensions are tried in ascending edge id. A state is the current end,
    the set of used edges and the membership of the last edge; everything
    the conditions look at is a function of that state, so each is expanded
    once.
    """
    delta = [0] * G.n
    vertices = [v0]
    edges: list[int] = []
    seen: set[tuple[int, int, bool]] = set()
    mask = F.mask

    def extend(cur: int, used: int) -> bool:
        for k in sorted(G.incident[cur]):
            if used >> k & 1:
                continue
            flag = bool(mask >> k & 1)
            if not edges and flag:
                continue
            nxt = G.other_end(k, cur)
            new_used = used | (1 << k)
            key = (nxt, new_used, flag)
            if key in seen:
                continue
            step = -1 if flag else 1
            delta[cur] += step
            delta[nxt] += step
            if _step_violation(H, F, delta, v0, cur, nxt) is None:
                seen.add(key)
                vertices.append(nxt)
                edges.append(k)
                if visit(vertices, edges, delta) or extend(nxt, new_used):
                    return True
                vertices.pop()
                edges.pop()
            delta[cur] -= step
            delta[nxt] -= step
        return False

    return extend(v0, 0)


def _as_trail(F: SpanningSubgraph, vertices: list[int], edges: list[int]) -> ChangeableTrail:
    return ChangeableTrail(tuple(vertices), tuple(edges), tuple(F.contains(k) for k in edges))


def find_augmenting_trail(G: Graph, H: Prescription, F: SpanningSubgraph,
                          cap: int = DEFAULT_TRAIL_EDGE_CAP) -> Optional[ChangeableTrail]:
    """First changeable trail whose flip lowers ``def_H[F]``, or None.

    Roots are tried in ascending vertex order. Only the start and the end of
    a trail can change deficiency, since interior vertices stay feasible.
    """
    _check_trail_cap(G, cap)
    found: list[ChangeableTrail] = []
    d = F.degrees

    for v0 in sorted(compute_B0(F, H)):
        def visit(vertices: list[int], edges: list[int], delta: list[int]) -> bool:
            ends = {v0, vertices[-1]}
            gain = sum(dist_to_set(d[x], H[x]) - dist_to_set(d[x] + delta[x], H[x])
                       for x in ends)
            if gain > 0:
                found.append(_as_trail(F, vertices, edges))
                return True
            return False

        if _search_from(G, H, F, v0, visit):
            return found[0]
    return None


def trail_witnesses(G: Graph, H: Prescription, F: SpanningSubgraph,
                    cap: int = DEFAULT_TRAIL_EDGE_CAP) -> dict[tuple[int, str], ChangeableTrail]:
    """First trail found for every reachable ``(end vertex, parity)`` pair.

    Each vertex of ``B0`` is reached by its own length-zero even trail.
    Closed trails count as ending at their start.
    """
    _check_trail_cap(G, cap)
    out: dict[tuple[int, str], ChangeableTrail] = {}
    for v0 in sorted(compute_B0(F, H)):
        out.setdefault((v0, "even"), ChangeableTrail((v0,), (), ()))

        def visit(vertices: list[int], edges: list[int], delta: list[int]) -> bool:
            key = (vertices[-1], "even" if F.contains(edges[-1]) else "odd")
            if key not in out:
                out[key] = _as_trail(F, vertices, edges)
            return False

        _search_from(G, H, F, v0, visit)
    return out


def reachability(G: Graph, H: Prescription, F: SpanningSubgraph,
                 cap: int = DEFAULT_TRAIL_EDGE_CAP) -> tuple[frozenset[int], frozenset[int]]:
    """Ends of even and of odd changeable trails."""
    witnesses = trail_witnesses(G, H, F, cap)
    even = frozenset(v for v, p in witnesses if p == "even")
    odd = frozenset(v for v, p in witnesses if p == "odd")
    return even, odd


@dataclass(frozen=True)
class TrailPartition:
    A: frozenset[int]
    B: frozenset[int]
    C: frozenset[int]
    D: frozenset[int]
    components: tuple[tuple[int, ...], ...]
    witnesses: dict[tuple[int, str], ChangeableTrail] = field(compare=False, repr=False)

    @property
    def tau(self) -> int:
        return len(self.components)

    def classes(self) -> tuple[frozenset[int], ...]:
        return (self.A, self.B, self.C, self.D)

    def to_dict(self) -> dict:
        return {"A": sorted(self.A), "B": sorted(self.B), "C": sorted(self.C),
                "D": sorted(self.D), "tau": self.tau,
                "D_components": [list(c) for c in self.components]}


def trail_partition(G: Graph, H: Prescription, F: SpanningSubgraph,
                    cap: int = DEFAULT_TRAIL_EDGE_CAP) -> TrailPartition:
    """Canonical partition read off changeable-trail reachability.

    ``F`` should be H-optimal and edge-minimal; nothing here checks that.
    """
    witnesses = trail_witnesses(G, H, F, cap)
    even = {v for v, p in witnesses if p == "even"}
    odd = {v for v, p in witnesses if p == "odd"}
    D = set(even & odd)
    for v in range(G.n):
        d, lo, hi = F.degrees[v], H.lo(v), H.hi(v)
        if v in even and lo < d <= hi:
            D.add(v)
        if v in odd and lo <= d < hi:
            D.add(v)
    B = even - D
    A = odd - D
    C = set(range(G.n)) - A - B - D
    return TrailPartition(frozenset(A), frozenset(B), frozenset(C), frozenset(D),
                          tuple(G.induced_components(D)), witnesses)
