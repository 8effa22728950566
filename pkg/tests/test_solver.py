import pytest
from hypothesis import given, settings

from hfactor.core import Graph, Prescription, SpanningSubgraph, deficiency_of
from hfactor.corpus import random_corpus
from hfactor.oracle import InstanceTooLarge, total_deficiency
from hfactor.solver import certify, initial_subgraph, optimize, prune_to_minimal
from hfactor.trails import is_changeable_trail, apply_trail

from .conftest import A, B, C, instances, ones


def test_initial_subgraph_examples(P3):
    assert initial_subgraph(P3, ones(3)).edge_pairs() == [(A, B)]
    C4 = Graph.cycle(4)
    assert initial_subgraph(C4, ones(4)).edge_ids() == [0, 2]
    assert initial_subgraph(P3, Prescription.uniform(3, [0])).edge_ids() == []


def test_prune_examples(P3):
    # ab has the lower id and dropping it first also keeps deficiency 1
    F = SpanningSubgraph.from_edges(P3, [(A, B), (B, C)])
    assert prune_to_minimal(P3, ones(3), F).edge_pairs() == [(B, C)]
    flipped = Graph(3, [(B, C), (A, B)])
    F = SpanningSubgraph.from_edges(flipped, [(A, B), (B, C)])
    assert prune_to_minimal(flipped, ones(3), F).edge_pairs() == [(A, B)]
    C4 = Graph.cycle(4)
    M = SpanningSubgraph(C4, 0b0101)
    assert prune_to_minimal(C4, ones(4), M) == M
    assert prune_to_minimal(P3, ones(3), SpanningSubgraph(P3)).edge_ids() == []


def test_prune_leaves_input_alone(P3):
    F = SpanningSubgraph.from_edges(P3, [(A, B), (B, C)])
    prune_to_minimal(P3, ones(3), F)
    assert F.size() == 2


def test_certify_examples(P3, K3):
    c = certify(P3, ones(3), SpanningSubgraph.from_edges(P3, [(A, B)]))
    assert c.certified and c.deficiency == 1 and c.method == "dual"
    assert certify(K3, ones(3), SpanningSubgraph.from_edges(K3, [(A, B), (B, C)])).certified
    C4 = Graph.cycle(4)
    c = certify(C4, ones(4), SpanningSubgraph(C4))
    assert not c.certified and (c.deficiency, c.bound) == (4, 0)
    assert "exceeds" in c.note


def test_certify_falls_back_to_oracle(P3):
    c = certify(P3, ones(3), SpanningSubgraph.from_edges(P3, [(A, B)]), dual_n_cap=2)
    assert c.certified and c.method == "oracle" and c.certificate == 1


def test_certify_beyond_both_caps(P3):
    c = certify(P3, ones(3), SpanningSubgraph(P3), dual_n_cap=1, oracle_cap=1)
    assert not c.certified and c.method == "none" and c.bound is None


@pytest.mark.parametrize("graph, H, value", [
    (Graph.path(3), ones(3), 1),
    (Graph.complete(3), ones(3), 1),
    (Graph.cycle(4), ones(4), 0),
])
def test_optimize_examples(graph, H, value):
    out = optimize(graph, H)
    assert out.certified and not out.stalled
    assert out.deficiency == value == deficiency_of(out.subgraph, H)


def test_optimize_petersen_perfect_matching():
    G = Graph.petersen()
    out = optimize(G, ones(10), dual_n_cap=0)
    assert out.path == "trails" and out.certified and out.deficiency == 0
    assert all(d == 1 for d in out.subgraph.degrees)


def test_optimize_hands_large_instances_to_oracle():
    G = Graph.complete(6)
    out = optimize(G, ones(6), trail_cap=10)
    assert out.path == "oracle" and out.certified and out.deficiency == 0


def test_optimize_refuses_beyond_caps():
    with pytest.raises(InstanceTooLarge):
        optimize(Graph.complete(7), ones(7), trail_cap=10, oracle_cap=12)


def test_outcome_serializes(P3):
    doc = optimize(P3, ones(3)).to_dict()
    assert doc["deficiency"] == 1 and doc["certified"] and not doc["stalled"]
    assert doc["certification"]["method"] == "dual"


def replay_log(G, H, outcome):
    """Re-run the logged trails from the greedy seed, checking each step."""
    F = initial_subgraph(G, H)
    last = None
    for P in outcome.augmentation_log:
        F = prune_to_minimal(G, H, F)
        before = deficiency_of(F, H)
        assert last is None or before <= last
        assert is_changeable_trail(F, H, P)
        F = apply_trail(F, P)
        assert deficiency_of(F, H) < before
        last = deficiency_of(F, H)
    return prune_to_minimal(G, H, F)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=6, max_m=10))
def test_optimize_reaches_oracle_value(inst):
    G, H = inst
    out = optimize(G, H, dual_n_cap=0)
    assert out.deficiency == total_deficiency(G, H)[0]
    assert out.certified and not out.stalled
    assert replay_log(G, H, out) == out.subgraph


def test_seeded_random_corpus_is_solved():
    for inst in random_corpus(40, n_max=7, m_max=12, seed=11):
        out = optimize(inst.graph, inst.H, dual_n_cap=0)
        assert out.certified, inst.label
