"""Acceptance criteria, each an exact integer equality over a seeded corpus."""

import time
from collections import Counter

import pytest

from hfactor.checks import CheckContext, MUTATIONS, max_matching_size, run_checks
from hfactor.cli import SweepConfig, build_corpus
from hfactor.core import Graph, Prescription
from hfactor.corpus import corpus_graphs, instance_rng, random_corpus
from hfactor.formula import max_dual
from hfactor.oracle import enumerate_optimal, total_deficiency
from hfactor.solver import optimize
from hfactor.trails import trail_partition

from .conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance

SEED = 7
PER_GRAPH = 50


def report(number, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def corpus():
    return build_corpus(SweepConfig(n_max=5, prescriptions_per_graph=PER_GRAPH, seed=SEED,
                                    matching_instances=False))


@pytest.fixture(scope="module")
def sweep(corpus):
    """Every check on every instance of the exhaustive corpus."""
    start = time.perf_counter()
    verdicts = [(inst, run_checks(CheckContext(inst.graph, inst.H))) for inst in corpus]
    elapsed = time.perf_counter() - start
    tally = Counter()
    for _, vs in verdicts:
        for v in vs:
            tally[v.check, v.status] += 1
    return verdicts, tally, elapsed


def counts(tally, name):
    return tally[name, "pass"], tally[name, "fail"], tally[name, "skip"]


def test_corpus_shape(corpus):
    assert len({(i.graph.n, i.graph.edges) for i in corpus}) == 31
    assert len(corpus) == 31 * PER_GRAPH


def test_1_duality(corpus, sweep):
    _, tally, elapsed = sweep
    # direct comparison as well as through the check catalog
    equal = sum(total_deficiency(i.graph, i.H)[0] == max_dual(i.graph, i.H).value
                for i in corpus)
    passed, failed, skipped = counts(tally, "duality")
    ok = equal == len(corpus) and passed == len(corpus) and not failed and not skipped
    report(1, ok and elapsed < 300,
           f"oracle == max dual on {equal}/{len(corpus)} instances "
           f"(full check sweep {elapsed:.1f}s)")


def test_2_weak_duality(corpus, sweep):
    passed, failed, skipped = counts(sweep[1], "weak_duality")
    report(2, passed == len(corpus) and not failed and not skipped,
           f"every (S,T) bounded by the oracle on {passed}/{len(corpus)} instances")


def test_3_structural_identity(corpus, sweep):
    passed, failed, skipped = counts(sweep[1], "structural_identity")
    subgraphs = sum(len(enumerate_optimal(i.graph, i.H, minimal=True)) for i in corpus)
    report(3, passed == len(corpus) and not failed and not skipped,
           f"identity holds on {passed}/{len(corpus)} instances, {subgraphs} qualifying F")


def test_4_partition_equivalence(corpus, sweep):
    passed, failed, skipped = counts(sweep[1], "partition_equivalence")
    report(4, passed == len(corpus) and not failed and not skipped,
           f"trail partition == spectrum partition on {passed}/{len(corpus)} instances")


STRUCTURAL = ("no_augmenting_trail", "class_degrees", "component_deficiency",
               "deficient_component_edges", "class_edges", "component_boundary",
               "component_optimality", "dual_bridge", "degree_bounds")


def test_5_structural_checks(corpus, sweep):
    tally = sweep[1]
    rows = {name: counts(tally, name) for name in STRUCTURAL}
    violations = sum(f for _, f, _ in rows.values())
    skips = sum(s for _, _, s in rows.values())
    ok = violations == 0 and skips == 0 and all(p == len(corpus) for p, _, _ in rows.values())
    report(5, ok, f"{len(STRUCTURAL)} structural checks, {violations} violations, "
                  f"{skips} skips")


NAMED = [("K3", Graph.complete(3), 1), ("K4", Graph.complete(4), 0),
         ("C5", Graph.cycle(5), 1), ("K1,3", Graph.star(3), 2),
         ("Petersen", Graph.petersen(), 0)]


def test_6_matching_specialization():
    graphs = [(f"g{i}", g, None) for i, g in enumerate(corpus_graphs(5))] + NAMED
    bad = []
    for label, g, expected in graphs:
        value = total_deficiency(g, Prescription.uniform(g.n, [1]))[0]
        nu_value = g.n - 2 * max_matching_size(g)
        if value != nu_value or (expected is not None and value != expected):
            bad.append(label)
    report(6, not bad, f"n - 2nu matches on {len(graphs) - len(bad)}/{len(graphs)} graphs "
                       f"({len(NAMED)} named)")


def test_7_solver_agreement():
    instances = list(random_corpus(200, n_max=7, m_max=16, seed=SEED))
    agree = stalls = 0
    for inst in instances:
        out = optimize(inst.graph, inst.H)
        value = total_deficiency(inst.graph, inst.H)[0]
        stalls += out.stalled
        agree += out.certified and out.deficiency == value
    report(7, agree == len(instances) and stalls == 0,
           f"certified-equal on {agree}/{len(instances)}, {stalls} stalls")


def interval_corpus(per_graph=20):
    """Prescriptions that are intervals of at least two values at every vertex."""
    out = []
    for g in corpus_graphs(5):
        rng = instance_rng(SEED, "interval", g.n, g.edges)
        for _ in range(per_graph):
            sets = {}
            for x in range(g.n):
                a = rng.randint(0, g.degree(x))
                sets[x] = range(a, rng.randint(a + 1, g.degree(x) + 2) + 1)
            out.append((g, Prescription(sets)))
    return out


def all_interval(H):
    return all(H.is_interval(x) and len(H[x]) >= 2 for x in H)


def test_8_interval_rule(corpus, sweep):
    from_sweep = [(i.graph, i.H) for i in corpus if all_interval(i.H)]
    cases = from_sweep + interval_corpus()
    partitions = bad = 0
    for g, H in cases:
        for F in enumerate_optimal(g, H, minimal=True):
            partitions += 1
            bad += bool(trail_partition(g, H, F).D)
    per_vertex = counts(sweep[1], "interval_rule")
    ok = bad == 0 and per_vertex[1] == 0 and per_vertex[2] == 0
    report(8, ok, f"D empty in {partitions - bad}/{partitions} partitions over "
                  f"{len(cases)} all-interval instances ({len(from_sweep)} from the corpus)")


def test_9_negative_control(corpus):
    failures = Counter()
    for name, shift in MUTATIONS.items():
        for inst in corpus:
            v = run_checks(CheckContext(inst.graph, inst.H, shift=shift), ["duality"])[0]
            failures[name] += v.status == "fail"
    report(9, all(failures[n] > 0 for n in MUTATIONS),
           "duality fails under every mutation: " +
           ", ".join(f"{n} {failures[n]}" for n in sorted(MUTATIONS)))
