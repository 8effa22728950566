import pytest
from hypothesis import given, settings

from hfactor.core import Graph, InvalidInput, Prescription, SpanningSubgraph
from hfactor.formula import (dual_witness, has_factor_criterion, lovasz_rhs, max_dual,
                             structural_deficiency, tau_count, disjoint_pairs)
from hfactor.oracle import InstanceTooLarge, enumerate_optimal, total_deficiency
from hfactor.trails import trail_partition

from .conftest import A, B, C, instances, ones


def test_tau_count_examples(P3, K3):
    assert tau_count(K3, ones(3), set(), set()) == (1, [(A, B, C)])
    assert tau_count(P3, ones(3), {B}, {A, C}) == (0, [])
    assert tau_count(K3, ones(3), set(), {A}) == (0, [])


def test_tau_count_rejects_overlap(K3):
    with pytest.raises(InvalidInput):
        tau_count(K3, ones(3), {A}, {A})


def test_tau_counts_isolated_components():
    # an isolated vertex needing degree 1 has no factor
    G = Graph(3, [(0, 1)])
    assert tau_count(G, ones(3), set(), set()) == (1, [(2,)])


def test_lovasz_rhs_examples(P3, K3):
    assert lovasz_rhs(K3, ones(3), set(), set()) == 1
    assert lovasz_rhs(P3, ones(3), {B}, {A, C}) == 1
    assert lovasz_rhs(K3, ones(3), set(), {A}) == -1


def test_max_dual_examples(P3, K3):
    w = max_dual(K3, ones(3))
    assert (w.value, w.S, w.T) == (1, set(), set())
    w = max_dual(P3, ones(3))
    assert (w.value, w.S, w.T) == (1, set(), set())
    assert max_dual(Graph.cycle(4), ones(4)).value == 0


def test_max_dual_tie_rule_prefers_small_pairs(P3):
    H = ones(3)
    winners = [dual_witness(P3, H, S, T) for S, T in disjoint_pairs(3)]
    best = max(w.value for w in winners)
    tied = [w for w in winners if w.value == best]
    assert len(tied) > 1
    chosen = max_dual(P3, H)
    assert len(chosen.S) + len(chosen.T) == min(len(w.S) + len(w.T) for w in tied)


def test_disjoint_pairs_counts():
    pairs = list(disjoint_pairs(4))
    assert len(pairs) == 81 == len(set(pairs))
    assert all(not (S & T) for S, T in pairs)


def test_dual_cap():
    with pytest.raises(InstanceTooLarge):
        max_dual(Graph.path(4), ones(4), n_cap=3)


def test_has_factor_criterion_examples(K3):
    assert has_factor_criterion(Graph.cycle(4), ones(4))
    assert not has_factor_criterion(K3, ones(3))
    assert has_factor_criterion(Graph(1), Prescription({0: [0]}))


def test_structural_examples(P3, K2, K3):
    F = SpanningSubgraph.from_edges(P3, [(A, B)])
    assert structural_deficiency(P3, ones(3), trail_partition(P3, ones(3), F)) == 1
    F = SpanningSubgraph.from_edges(K3, [(A, B)])
    assert structural_deficiency(K3, ones(3), trail_partition(K3, ones(3), F)) == 1
    F = SpanningSubgraph.from_edges(K2, [(A, B)])
    assert structural_deficiency(K2, ones(2), trail_partition(K2, ones(2), F)) == 0


def test_witness_serializes(K3):
    assert max_dual(K3, ones(3)).to_dict() == {
        "S": [], "T": [], "tau": 1, "value": 1, "deficient_components": [[0, 1, 2]]}


@settings(max_examples=50, deadline=None)
@given(instances(max_n=5, max_m=8))
def test_weak_duality_and_equality(inst):
    G, H = inst
    value, _ = total_deficiency(G, H)
    witnesses = [dual_witness(G, H, S, T) for S, T in disjoint_pairs(G.n)]
    assert all(w.value <= value for w in witnesses)
    assert max(w.value for w in witnesses) == value == max_dual(G, H).value


@settings(max_examples=50, deadline=None)
@given(instances(max_n=5, max_m=8))
def test_structural_identity_and_bridge(inst):
    G, H = inst
    value, _ = total_deficiency(G, H)
    for F in enumerate_optimal(G, H, minimal=True):
        p = trail_partition(G, H, F)
        assert structural_deficiency(G, H, p) == value
        w = dual_witness(G, H, p.A, p.B)
        assert (w.tau, w.value) == (p.tau, value)
