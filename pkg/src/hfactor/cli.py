"""Command-line entry point: ``hfactor {solve,partition,formula,oracle,verify}``.

Exit status: 0 success, 1 a check failed (or a result could not be
certified), 2 a cap refused the instance, 3-7 the instance was rejected.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from . import checks as checks_mod
from .checks import CHECKS, Caps, CheckContext, MUTATIONS, run_checks
from .core import Graph, Prescription, SpanningSubgraph, shift_prescription
from .corpus import Instance, corpus_graphs, instance_rng, random_corpus, random_prescription
from .formula import DEFAULT_DUAL_N_CAP, max_dual, structural_deficiency
from .instance import InstanceError, instance_to_doc, parse_instance
from .oracle import (DEFAULT_EDGE_CAP, InstanceTooLarge, degree_spectra,
                     lovasz_partition, total_deficiency)
from .solver import optimize, prune_to_minimal
from .trails import DEFAULT_TRAIL_EDGE_CAP, trail_partition

log = logging.getLogger("hfactor")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CAP = 0, 1, 2


def _digest(G: Graph, H: Prescription) -> dict:
    return {"n": G.n, "m": G.m, "H": [list(H[x]) for x in range(G.n)]}


def _caps(args: argparse.Namespace) -> Caps:
    return Caps(args.oracle_edge_cap, args.trail_edge_cap, args.dual_n_cap)


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.phases: dict[str, float] = {}

    def phase(self, name: str):
        timer = self

        class _Phase:
            def __enter__(self):
                self.t0 = time.perf_counter()

            def __exit__(self, *exc):
                timer.phases[name] = round(time.perf_counter() - self.t0, 6)

        return _Phase()

    def attach(self, report: dict) -> dict:
        if self.enabled:
            report["timing"] = self.phases
        return report


_SCALAR_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def render(report: dict) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(report, indent=2)
    for _ in range(2):
        text = _SCALAR_LIST.sub(
            lambda m: "[" + ", ".join(p.strip() for p in m.group(1).split(",") if p.strip()) + "]",
            text)
    return text


def _emit(report: dict) -> None:
    sys.stdout.write(render(report) + "\n")


# -- single-instance commands ------------------------------------------------


def cmd_solve(G: Graph, H: Prescription, args: argparse.Namespace) -> int:
    timer = _Timer(args.timing)
    with timer.phase("solve"):
        outcome = optimize(G, H, args.trail_edge_cap, args.dual_n_cap, args.oracle_edge_cap)
    _emit(timer.attach({"command": "solve", "instance": _digest(G, H),
                        "outcome": outcome.to_dict()}))
    return EXIT_OK if outcome.certified else EXIT_CHECK_FAILED


def _reference_subgraph(G: Graph, H: Prescription, args: argparse.Namespace) -> SpanningSubgraph:
    """An optimal, edge-minimal subgraph: the oracle's when affordable, else the solver's."""
    if G.m <= args.oracle_edge_cap:
        return prune_to_minimal(G, H, total_deficiency(G, H, args.oracle_edge_cap)[1])
    outcome = optimize(G, H, args.trail_edge_cap, args.dual_n_cap, args.oracle_edge_cap)
    if not outcome.certified:
        raise InstanceTooLarge("could not certify an optimal subgraph for the partition")
    return outcome.subgraph


def cmd_partition(G: Graph, H: Prescription, args: argparse.Namespace) -> int:
    timer = _Timer(args.timing)
    with timer.phase("reference"):
        F = _reference_subgraph(G, H, args)
    with timer.phase("trails"):
        tp = trail_partition(G, H, F, args.trail_edge_cap)
    report = {"command": "partition", "instance": _digest(G, H),
              "F": [list(e) for e in F.edge_pairs()], "trail_partition": tp.to_dict(),
              "structural_value": structural_deficiency(G, H, tp)}
    status = EXIT_OK
    if G.m <= args.oracle_edge_cap:
        with timer.phase("oracle"):
            lp = lovasz_partition(G, H, cap=args.oracle_edge_cap)
        report["lovasz_partition"] = {"A": sorted(lp.A), "B": sorted(lp.B),
                                      "C": sorted(lp.C), "D": sorted(lp.D)}
        report["agree"] = lp.classes() == tp.classes()
        if not report["agree"]:
            status = EXIT_CHECK_FAILED
    _emit(timer.attach(report))
    return status


def cmd_formula(G: Graph, H: Prescription, args: argparse.Namespace) -> int:
    timer = _Timer(args.timing)
    with timer.phase("dual"):
        w = max_dual(G, H, args.dual_n_cap, cap=args.oracle_edge_cap)
    exists = w.value <= 0
    report = {"command": "formula", "instance": _digest(G, H), "max": w.value,
              "factor_exists": exists,
              "message": "H-factor exists" if exists else
              f"no H-factor: (S,T) certifies deficiency at least {w.value}",
              "witness": w.to_dict()}
    _emit(timer.attach(report))
    return EXIT_OK


def cmd_oracle(G: Graph, H: Prescription, args: argparse.Namespace) -> int:
    timer = _Timer(args.timing)
    with timer.phase("oracle"):
        value, witness = total_deficiency(G, H, args.oracle_edge_cap)
        table = degree_spectra(G, H, cap=args.oracle_edge_cap)
        lp = lovasz_partition(G, H, cap=args.oracle_edge_cap)
    _emit(timer.attach({
        "command": "oracle", "instance": _digest(G, H), "deficiency": value,
        "witness": [list(e) for e in witness.edge_pairs()],
        "optimal_count": table.optimal_count,
        "spectra": [sorted(s) for s in table.spectra],
        "lovasz_partition": {"A": sorted(lp.A), "B": sorted(lp.B),
                             "C": sorted(lp.C), "D": sorted(lp.D)}}))
    return EXIT_OK


# -- verification sweep ------------------------------------------------------


@dataclass
class SweepConfig:
    mode: str = "exhaustive"
    n_max: int = 5
    m_max: Optional[int] = None
    prescriptions_per_graph: int = 50
    value_ceiling: Optional[int] = None
    seed: int = 7
    count: int = 200
    labeled: bool = False
    matching_instances: bool = True
    caps: Caps = field(default_factory=Caps)
    checks: tuple[str, ...] = tuple(CHECKS)
    mutation: Optional[str] = None


def build_corpus(cfg: SweepConfig) -> list[Instance]:
    if cfg.mode == "random":
        return list(random_corpus(cfg.count, cfg.n_max, cfg.m_max, cfg.seed, cfg.value_ceiling))
    out = []
    for gi, g in enumerate(corpus_graphs(cfg.n_max, cfg.labeled)):
        if cfg.m_max is not None and g.m > cfg.m_max:
            continue
        rng = instance_rng(cfg.seed, g.n, g.edges)
        for j in range(cfg.prescriptions_per_graph):
            out.append(Instance(g, random_prescription(g, rng, cfg.value_ceiling), f"g{gi}-h{j}"))
        if cfg.matching_instances:
            out.append(Instance(g, Prescription.uniform(g.n, [1]), f"g{gi}-match"))
    return out


def _context(G: Graph, H: Prescription, caps: Caps, mutation: Optional[str],
             only_subgraph: Optional[int] = None) -> CheckContext:
    shift = MUTATIONS[mutation] if mutation else shift_prescription
    return CheckContext(G, H, caps, shift, only_subgraph)


def _run_instance(job: tuple[Instance, SweepConfig]) -> list[checks_mod.Verdict]:
    inst, cfg = job
    return run_checks(_context(inst.graph, inst.H, cfg.caps, cfg.mutation), cfg.checks)


def _repro_doc(inst: Instance, verdict: checks_mod.Verdict, cfg: SweepConfig) -> dict:
    v = verdict.violations[0]
    F = None if v.subgraph is None else SpanningSubgraph(inst.graph, v.subgraph)
    return {"check": verdict.check, "label": inst.label, "message": v.message,
            "instance": instance_to_doc(inst.graph, inst.H),
            "F": None if F is None else [list(e) for e in F.edge_pairs()],
            "mutation": cfg.mutation, "caps": asdict(cfg.caps)}


def run_sweep(cfg: SweepConfig, jobs: int = 1,
              repro_dir: Optional[Path] = None) -> dict:
    corpus = build_corpus(cfg)
    if not corpus:
        log.warning("empty corpus: nothing to verify")
    tally: dict[str, Counter] = {name: Counter() for name in cfg.checks}
    skip_reasons: dict[str, Counter] = {name: Counter() for name in cfg.checks}
    failures = []
    work = [(inst, cfg) for inst in corpus]
    if jobs > 1 and work:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run_instance, work, chunksize=8))
    else:
        results = [_run_instance(job) for job in work]
    for inst, verdicts in zip(corpus, results):
        for v in verdicts:
            tally[v.check][v.status] += 1
            if v.status == "skip":
                skip_reasons[v.check][v.reason.split(":")[0]] += 1
            elif v.status == "fail":
                doc = _repro_doc(inst, v, cfg)
                if repro_dir is not None:
                    repro_dir.mkdir(parents=True, exist_ok=True)
                    path = repro_dir / re.sub(r"[^\w.-]", "_", f"{v.check}-{inst.label}.json")
                    path.write_text(render(doc) + "\n")
                    doc["file"] = str(path)
                failures.append(doc)
    graphs = len({(i.graph.n, i.graph.edges) for i in corpus})
    return {
        "config": {"mode": cfg.mode, "n_max": cfg.n_max, "m_max": cfg.m_max,
                   "prescriptions_per_graph": cfg.prescriptions_per_graph,
                   "value_ceiling": cfg.value_ceiling, "seed": cfg.seed,
                   "count": cfg.count if cfg.mode == "random" else None,
                   "enumeration": "labeled" if cfg.labeled else "isomorphism classes",
                   "caps": asdict(cfg.caps), "mutation": cfg.mutation},
        "corpus": {"graphs": graphs, "instances": len(corpus)},
        "checks": {name: {"pass": tally[name]["pass"], "fail": tally[name]["fail"],
                          "skip": tally[name]["skip"],
                          "skip_reasons": dict(sorted(skip_reasons[name].items()))}
                   for name in cfg.checks},
        "failures": len(failures),
        "skips": sum(c["cap"] for c in skip_reasons.values()),
        "reproductions": failures[:20],
    }


def replay(path: Path) -> dict:
    doc = json.loads(Path(path).read_text())
    G, H = parse_instance(doc["instance"])
    caps = Caps(**doc.get("caps", {}))
    only = None
    if doc.get("F") is not None:
        only = SpanningSubgraph.from_edges(G, [tuple(e) for e in doc["F"]]).mask
    verdict = run_checks(_context(G, H, caps, doc.get("mutation"), only), [doc["check"]])[0]
    return {"check": doc["check"], "status": verdict.status, "reason": verdict.reason,
            "reproduced": verdict.status == "fail", "recorded": doc["message"]}


def cmd_verify(args: argparse.Namespace) -> int:
    if args.replay:
        result = replay(Path(args.replay))
        _emit({"command": "verify", "replay": result})
        return EXIT_CHECK_FAILED if result["reproduced"] else EXIT_OK
    names = tuple(args.checks.split(",")) if args.checks else tuple(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        print(f"unknown checks: {unknown}; known: {list(CHECKS)}", file=sys.stderr)
        return 3
    cfg = SweepConfig(args.mode, args.n_max, args.m_max, args.prescriptions_per_graph,
                      args.value_ceiling, args.seed, args.count, args.labeled,
                      not args.no_matching, _caps(args), names, args.mutate)
    timer = _Timer(args.timing)
    with timer.phase("sweep"):
        report = run_sweep(cfg, args.jobs, Path(args.repro_dir))
    for name, counts in report["checks"].items():
        status = "FAIL" if counts["fail"] else "ok"
        print(f"{status:4} {name:26} pass={counts['pass']} fail={counts['fail']} "
              f"skip={counts['skip']}", file=sys.stderr)
    _emit(timer.attach({"command": "verify", **report}))
    if report["failures"]:
        return EXIT_CHECK_FAILED
    if args.strict and report["skips"]:
        return EXIT_CAP
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle-edge-cap", type=int, default=DEFAULT_EDGE_CAP)
    p.add_argument("--trail-edge-cap", type=int, default=DEFAULT_TRAIL_EDGE_CAP)
    p.add_argument("--dual-n-cap", type=int, default=DEFAULT_DUAL_N_CAP)
    p.add_argument("--timing", action="store_true", help="add per-phase wall times")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hfactor", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("solve", "optimal subgraph by trail augmentation, certified"),
                        ("partition", "canonical (A,B,C,D) partition"),
                        ("formula", "max over disjoint (S,T) and its witness"),
                        ("oracle", "exhaustive deficiency, spectra and partition")]:
        p = sub.add_parser(name, help=help_)
        p.add_argument("instance", help="instance JSON file, or - for stdin")
        _add_caps(p)
    p = sub.add_parser("verify", help="run the check catalog over a corpus")
    _add_caps(p)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--prescriptions-per-graph", type=int, default=50)
    p.add_argument("--value-ceiling", type=int, default=None,
                   help="largest prescription element (default: degree + 1)")
    p.add_argument("--count", type=int, default=200, help="instances in random mode")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--labeled", action="store_true",
                   help="every labelled graph instead of one per isomorphism class")
    p.add_argument("--no-matching", action="store_true",
                   help="skip the extra H = {1} instance per graph")
    p.add_argument("--checks", default=None, help="comma-separated subset of checks")
    p.add_argument("--mutate", choices=sorted(MUTATIONS), default=None,
                   help="corrupt the prescription shift (negative control)")
    p.add_argument("--strict", action="store_true", help="cap skips fail the run")
    p.add_argument("--replay", default=None, help="rerun a reproduction file")
    p.add_argument("--repro-dir", default="hfactor-repro")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "verify":
            return cmd_verify(args)
        text = sys.stdin.read() if args.instance == "-" else Path(args.instance).read_text()
        G, H = parse_instance(text)
        handler = {"solve": cmd_solve, "partition": cmd_partition,
                   "formula": cmd_formula, "oracle": cmd_oracle}[args.command]
        return handler(G, H, args)
    except InstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InstanceTooLarge as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
