"""JSON instance documents.

::

    {"n": 3,
     "edges": [[0, 1], [1, 2], [0, 2]],
     "H": {"*": [1], "2": {"interval": [0, 2]}}}

``H`` maps vertex indices (as strings) to an explicit list of allowed
degrees or to ``{"interval": [a, b]}``; the optional ``"*"`` entry is the
default for vertices not listed.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .core import Graph, Prescription, star_gaps


class InstanceError(ValueError):
    """Rejected instance document; ``code`` is the CLI exit status."""

    code = 3
    kind = "malformed"

    def __init__(self, message: str):
        super().__init__(f"{self.kind}: {message}")


class MalformedInstance(InstanceError):
    pass


class DuplicateEdge(InstanceError):
    code = 4
    kind = "duplicate edge"


class LoopEdge(InstanceError):
    code = 5
    kind = "loop"


class EmptyPrescription(InstanceError):
    code = 6
    kind = "empty prescription"


class GapViolation(InstanceError):
    code = 7
    kind = "gap violation"


def _int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInstance(f"{what} must be an integer, got {value!r}")
    return value


def _prescription_entry(x: Union[int, str], spec: Any) -> list[int]:
    if isinstance(spec, dict):
        if set(spec) != {"interval"}:
            raise MalformedInstance(f"H[{x}]: unknown keys {sorted(spec)}")
        bounds = spec["interval"]
        if not isinstance(bounds, list) or len(bounds) != 2:
            raise MalformedInstance(f"H[{x}]: interval needs [a, b]")
        a, b = (_int(v, f"H[{x}] interval bound") for v in bounds)
        values = list(range(a, b + 1))
    elif isinstance(spec, list):
        values = [_int(v, f"H[{x}] element") for v in spec]
    else:
        raise MalformedInstance(f"H[{x}] must be a list or an interval object")
    if not values:
        raise EmptyPrescription(f"vertex {x} allows no degree")
    if min(values) < 0:
        raise MalformedInstance(f"H[{x}] has a negative element")
    gaps = star_gaps(values)
    if gaps:
        lo, hi = gaps[0]
        missing = ", ".join(map(str, range(lo, hi + 1)))
        raise GapViolation(f"vertex {x} skips {{{missing}}}; gaps may miss only one value")
    return values


def parse_instance(doc: Union[str, bytes, dict]) -> tuple[Graph, Prescription]:
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise MalformedInstance(f"not JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise MalformedInstance("document must be an object")
    missing = {"n", "edges", "H"} - set(doc)
    if missing:
        raise MalformedInstance(f"missing fields {sorted(missing)}")
    n = _int(doc["n"], "n")
    if n < 0:
        raise MalformedInstance("n must be nonnegative")
    if not isinstance(doc["edges"], list):
        raise MalformedInstance("edges must be a list")
    seen = set()
    edges = []
    for pair in doc["edges"]:
        if not isinstance(pair, list) or len(pair) != 2:
            raise MalformedInstance(f"edge {pair!r} is not a pair")
        u, v = (_int(p, "edge endpoint") for p in pair)
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInstance(f"edge {pair} leaves 0..{n - 1}")
        if u == v:
            raise LoopEdge(f"edge {pair}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(f"edge {pair}")
        seen.add(key)
        edges.append(key)
    raw = doc["H"]
    if not isinstance(raw, dict):
        raise MalformedInstance("H must be an object")
    default = _prescription_entry("*", raw["*"]) if "*" in raw else None
    sets: dict[int, list[int]] = {}
    for key, spec in raw.items():
        if key == "*":
            continue
        try:
            x = int(key)
        except ValueError:
            raise MalformedInstance(f"H key {key!r} is not a vertex index") from None
        if not 0 <= x < n:
            raise MalformedInstance(f"H key {key} leaves 0..{n - 1}")
        sets[x] = _prescription_entry(x, spec)
    for x in range(n):
        if x not in sets:
            if default is None:
                raise MalformedInstance(f"no prescription for vertex {x} and no '*' default")
            sets[x] = default
    return Graph(n, edges), Prescription(sets)


def load_instance(path: Union[str, Path]) -> tuple[Graph, Prescription]:
    return parse_instance(Path(path).read_text())


def instance_to_doc(G: Graph, H: Prescription) -> dict:
    return {"n": G.n, "edges": [list(e) for e in G.edges],
            "H": {str(x): list(H[x]) for x in range(G.n)}}
