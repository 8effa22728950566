"""Build an H-optimal subgraph by greedy seeding and changeable-trail augmentation.

Exhausting the trail search is not taken as proof of optimality; every
result goes through :func:`certify`, which compares against the dual
formula (or the exhaustive oracle when the vertex count is too large for
the dual sweep).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Union

from .core import Graph, Prescription, SpanningSubgraph, deficiency_of, dist_to_set
from .formula import DEFAULT_DUAL_N_CAP, DualWitness, max_dual
from .oracle import DEFAULT_EDGE_CAP, InstanceTooLarge, total_deficiency
from .trails import (DEFAULT_TRAIL_EDGE_CAP, ChangeableTrail, apply_trail,
                     find_augmenting_trail)

log = logging.getLogger(__name__)


def _edge_gain(H: Prescription, F: SpanningSubgraph, k: int) -> int:
    """Drop in total deficiency if edge ``k`` is toggled."""
    u, v = F.host.edges[k]
    step = -1 if F.contains(k) else 1
    return sum(dist_to_set(F.degrees[x], H[x]) - dist_to_set(F.degrees[x] + step, H[x])
               for x in (u, v))


def initial_subgraph(G: Graph, H: Prescription) -> SpanningSubgraph:
    """Greedy seed: add edges that strictly help without exceeding any maximum."""
    F = SpanningSubgraph(G)
    changed = True
    while changed:
        changed = False
        for k, (u, v) in enumerate(G.edges):
            if F.contains(k) or F.degrees[u] >= H.hi(u) or F.degrees[v] >= H.hi(v):
                continue
            if _edge_gain(H, F, k) > 0:
                F.toggle(k)
                changed = True
    return F


def prune_to_minimal(G: Graph, H: Prescription, F: SpanningSubgraph) -> SpanningSubgraph:
    """Drop selected edges, ascending id, while the deficiency does not go up."""
    F = F.copy()
    changed = True
    while changed:
        changed = False
        for k in F.edge_ids():
            if _edge_gain(H, F, k) >= 0:
                F.toggle(k)
                changed = True
    return F


@dataclass(frozen=True)
class Certification:
    certified: bool
    deficiency: int
    bound: Optional[int]
    method: str
    certificate: Union[DualWitness, int, None] = None
    note: str = ""

    def to_dict(self) -> dict:
        cert = self.certificate.to_dict() if isinstance(self.certificate, DualWitness) \
            else self.certificate
        return {"certified": self.certified, "deficiency": self.deficiency,
                "bound": self.bound, "method": self.method, "certificate": cert,
                "note": self.note}


def certify(G: Graph, H: Prescription, F: SpanningSubgraph,
            dual_n_cap: int = DEFAULT_DUAL_N_CAP,
            oracle_cap: int = DEFAULT_EDGE_CAP) -> Certification:
    """Compare ``def_H[F]`` with the dual maximum, falling back to the oracle."""
    value = deficiency_of(F, H)
    if G.n <= dual_n_cap:
        witness = max_dual(G, H, dual_n_cap, cap=oracle_cap)
        bound, method, cert = witness.value, "dual", witness
    elif G.m <= oracle_cap:
        bound, _ = total_deficiency(G, H, oracle_cap)
        method, cert = "oracle", bound
    else:
        return Certification(False, value, None, "none", None,
                             "instance exceeds both dual and oracle caps")
    if value == bound:
        return Certification(True, value, bound, method, cert)
    return Certification(False, value, bound, method, cert,
                         f"deficiency {value} exceeds lower bound {bound}")


@dataclass
class SolveOutcome:
    subgraph: SpanningSubgraph
    deficiency: int
    certified: bool
    certification: Certification
    augmentation_log: list[ChangeableTrail] = field(default_factory=list)
    path: str = "trails"

    @property
    def stalled(self) -> bool:
        """Augmentation stopped above the certified optimum."""
        c = self.certification
        return c.bound is not None and self.deficiency > c.bound

    def to_dict(self) -> dict:
        return {"deficiency": self.deficiency, "certified": self.certified,
                "stalled": self.stalled, "path": self.path,
                "edges": [list(e) for e in self.subgraph.edge_pairs()],
                "certification": self.certification.to_dict(),
                "augmentations": [p.to_dict() for p in self.augmentation_log]}


def optimize(G: Graph, H: Prescription, trail_cap: int = DEFAULT_TRAIL_EDGE_CAP,
             dual_n_cap: int = DEFAULT_DUAL_N_CAP,
             oracle_cap: int = DEFAULT_EDGE_CAP) -> SolveOutcome:
    """Augment until no changeable trail helps, prune, then certify.

    The subgraph is pruned before each search so that the vertices short of
    their minimum are exactly the infeasible ones. Instances beyond the
    trail cap are handed to the oracle whole.
    """
    if G.m > trail_cap:
        if G.m > oracle_cap:
            raise InstanceTooLarge(
                f"{G.m} edges exceeds both trail cap {trail_cap} and oracle cap {oracle_cap}")
        _, F = total_deficiency(G, H, oracle_cap)
        F = prune_to_minimal(G, H, F)
        cert = certify(G, H, F, dual_n_cap, oracle_cap)
        return SolveOutcome(F, cert.deficiency, cert.certified, cert, [], "oracle")

    F = initial_subgraph(G, H)
    trails: list[ChangeableTrail] = []
    while True:
        F = prune_to_minimal(G, H, F)
        P = find_augmenting_trail(G, H, F, trail_cap)
        if P is None:
            break
        before = deficiency_of(F, H)
        F = apply_trail(F, P)
        log.debug("augmented along %s: %d -> %d", P.vertices, before, deficiency_of(F, H))
        trails.append(P)
    cert = certify(G, H, F, dual_n_cap, oracle_cap)
    if not cert.certified:
        log.warning("solver stalled: %s", cert.note)
    return SolveOutcome(F, cert.deficiency, cert.certified, cert, trails)
