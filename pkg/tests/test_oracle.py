import pytest
from hypothesis import given, settings

from hfactor.checks import max_matching_size
from hfactor.core import Graph, Prescription, SpanningSubgraph, deficiency_of
from hfactor.oracle import (InstanceTooLarge, degree_spectra, enumerate_optimal,
                            has_H_factor, lovasz_partition, total_deficiency)

from .conftest import A, B, C, instances, ones


def brute_deficiencies(G, H):
    """Plain per-subgraph scoring, independent of the vectorized tables."""
    return [deficiency_of(SpanningSubgraph(G, mask), H) for mask in range(1 << G.m)]


def test_total_deficiency_examples(K3):
    assert total_deficiency(K3, ones(3))[0] == 1
    assert total_deficiency(Graph.cycle(4), ones(4))[0] == 0
    value, witness = total_deficiency(Graph(1), Prescription({0: [0]}))
    assert value == 0 and witness.edge_ids() == []


def test_frozen_values_match_brute_force(K3):
    assert min(brute_deficiencies(K3, ones(3))) == 1
    assert min(brute_deficiencies(Graph.cycle(4), ones(4))) == 0


def test_witness_is_smallest_minimizer():
    G, H = Graph.cycle(4), ones(4)
    defs = brute_deficiencies(G, H)
    _, witness = total_deficiency(G, H)
    assert witness.mask == defs.index(min(defs))


def test_has_factor_examples(K2, K3):
    assert has_H_factor(K2, ones(2))
    assert not has_H_factor(K3, ones(3))
    shifted = Prescription({0: [0], 1: [0]}, allow_negative=True)
    assert has_H_factor(K2, shifted)
    assert not has_H_factor(K2, Prescription({0: [-1], 1: [0]}, allow_negative=True))


def test_enumerate_optimal_examples(P3, K2):
    H = ones(3)
    assert [F.edge_pairs() for F in enumerate_optimal(P3, H)] == [
        [(A, B)], [(B, C)], [(A, B), (B, C)]]
    assert [F.edge_pairs() for F in enumerate_optimal(P3, H, minimal=True)] == [
        [(A, B)], [(B, C)]]
    assert [F.edge_pairs() for F in enumerate_optimal(K2, ones(2))] == [[(A, B)]]


def test_minimal_filter_sees_past_single_edges():
    # removing one edge of the 2-path raises deficiency at the middle vertex,
    # removing both restores it, so the 2-path is optimal but not minimal
    G = Graph.path(3)
    H = Prescription({0: [0, 1], 1: [0, 2], 2: [0, 1]})
    assert [F.edge_ids() for F in enumerate_optimal(G, H, minimal=True)] == [[]]


def test_bounded_filter():
    G = Graph.path(3)
    H = Prescription({0: [0, 1], 1: [0], 2: [1]})
    assert all(F.degrees[1] == 0 for F in enumerate_optimal(G, H, bounded=True))


def test_spectra_examples(P3, K2, K3):
    t = degree_spectra(P3, ones(3))
    assert (t[A], t[B], t[C]) == ({0, 1}, {1, 2}, {0, 1})
    assert t.optimal_count == 3 and t.min_deficiency == 1
    assert degree_spectra(K2, ones(2)).spectra == (frozenset({1}), frozenset({1}))
    assert all(s == {0, 1, 2} for s in degree_spectra(K3, ones(3)).spectra)


def test_lovasz_partition_examples(P3, K2, K3):
    p = lovasz_partition(P3, ones(3))
    assert (p.A, p.B, p.C, p.D) == ({B}, {A, C}, set(), set())
    assert lovasz_partition(K3, ones(3)).D == {A, B, C}
    assert lovasz_partition(K2, ones(2)).C == {A, B}


def test_cap_refuses_large_instances():
    with pytest.raises(InstanceTooLarge, match="too large for oracle"):
        total_deficiency(Graph.complete(8), ones(8), cap=22)


@pytest.mark.parametrize("graph, expected", [
    (Graph.complete(3), 1),
    (Graph.complete(4), 0),
    (Graph.cycle(5), 1),
    (Graph.star(3), 2),
    (Graph.petersen(), 0),
])
def test_matching_specialization(graph, expected):
    assert total_deficiency(graph, ones(graph.n))[0] == expected
    assert graph.n - 2 * max_matching_size(graph) == expected


@settings(max_examples=60, deadline=None)
@given(instances(max_n=5, max_m=8))
def test_oracle_agrees_with_brute_force(inst):
    G, H = inst
    defs = brute_deficiencies(G, H)
    value, witness = total_deficiency(G, H)
    assert value == min(defs) == deficiency_of(witness, H)
    assert [F.mask for F in enumerate_optimal(G, H)] == \
        [mask for mask, d in enumerate(defs) if d == value]
    assert has_H_factor(G, H) == (value == 0)


@settings(max_examples=60, deadline=None)
@given(instances(max_n=5, max_m=8))
def test_minimal_filter_matches_subset_search(inst):
    G, H = inst
    optimal = {F.mask for F in enumerate_optimal(G, H)}
    expected = [m for m in sorted(optimal)
                if not any(o != m and o & m == o for o in optimal)]
    assert [F.mask for F in enumerate_optimal(G, H, minimal=True)] == expected


@settings(max_examples=60, deadline=None)
@given(instances(max_n=5, max_m=8))
def test_partition_is_disjoint_cover(inst):
    G, H = inst
    p = lovasz_partition(G, H)
    assert sum(map(len, p.classes())) == G.n
    assert set().union(*p.classes()) == set(range(G.n))
    for F in enumerate_optimal(G, H):
        assert all(F.degrees[x] in H[x] for x in p.C)
