"""General factors of graphs with one-element-gap degree prescriptions."""

from .core import (Graph, InvalidInput, Prescription, SpanningSubgraph, deficiency_of,
                   dist_to_set, restrict_to_component, shift_prescription,
                   validate_star_property)
from .formula import DualWitness, lovasz_rhs, max_dual, structural_deficiency, tau_count
from .oracle import (InstanceTooLarge, degree_spectra, enumerate_optimal, has_H_factor,
                     lovasz_partition, total_deficiency)
from .solver import SolveOutcome, certify, optimize
from .trails import (ChangeableTrail, TrailPartition, apply_trail, find_augmenting_trail,
                     is_changeable_trail, reachability, trail_partition)

__all__ = [
    "ChangeableTrail", "DualWitness", "Graph", "InstanceTooLarge", "InvalidInput",
    "Prescription", "SolveOutcome", "SpanningSubgraph", "TrailPartition", "apply_trail",
    "certify", "deficiency_of", "degree_spectra", "dist_to_set", "enumerate_optimal",
    "find_augmenting_trail", "has_H_factor", "is_changeable_trail", "lovasz_partition",
    "lovasz_rhs", "max_dual", "optimize", "reachability", "restrict_to_component",
    "shift_prescription", "structural_deficiency", "tau_count", "total_deficiency",
    "trail_partition", "validate_star_property",
]
