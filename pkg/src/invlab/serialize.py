"""JSON and DOT serialization.

Graph format: {"n": int, "arcs": [[u, v], ...]}, digon-freeness validated on
load.  Family format: {"mode": "eq"|"leq", "p": int, "sets": [[...], ...]}.
Dumps are canonical (sorted arcs/keys, compact separators), so round-trips
are byte-exact.
"""

from __future__ import annotations

import json
from typing import Any, Optional, Sequence

from .errors import InputError
from .generate import Hypergraph, MccInstance
from .graphs import InversionFamily, OrientedGraph, UndirectedGraph


def _dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_dict(D: OrientedGraph) -> dict:
    return {"n": D.n, "arcs": [[u, v] for u, v in sorted(D.arcs())]}


def graph_from_dict(data: Any) -> OrientedGraph:
    if not isinstance(data, dict) or "n" not in data or "arcs" not in data:
        raise InputError("graph JSON needs keys 'n' and 'arcs'")
    n = data["n"]
    arcs = data["arcs"]
    if not isinstance(n, int) or not isinstance(arcs, list):
        raise InputError("graph JSON types: n int, arcs list")
    pairs = []
    for item in arcs:
        if not (isinstance(item, (list, tuple)) and len(item) == 2):
            raise InputError(f"bad arc entry {item!r}")
        u, v = item
        if not isinstance(u, int) or not isinstance(v, int):
            raise InputError(f"bad arc entry {item!r}")
        pairs.append((u, v))
    return OrientedGraph.from_arcs(n, pairs)


def graph_to_json(D: OrientedGraph) -> str:
    return _dumps(graph_to_dict(D))


def graph_from_json(text: str) -> OrientedGraph:
    try:
        return graph_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def family_to_dict(family: InversionFamily) -> dict:
    return {
        "mode": family.mode,
        "p": family.p,
        "sets": [sorted(X) for X in family.sets],
    }


def family_from_dict(data: Any) -> InversionFamily:
    if not isinstance(data, dict) or not {"mode", "p", "sets"} <= set(data):
        raise InputError("family JSON needs keys 'mode', 'p' and 'sets'")
    sets = tuple(frozenset(X) for X in data["sets"])
    fam = InversionFamily(sets, data["p"], data["mode"])
    if fam.mode not in ("eq", "leq"):
        raise InputError(f"unknown family mode {fam.mode!r}")
    return fam


def family_to_json(family: InversionFamily) -> str:
    return _dumps(family_to_dict(family))


def family_from_json(text: str) -> InversionFamily:
    try:
        return family_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def graph_to_dot(D: OrientedGraph, names: Optional[Sequence[str]] = None) -> str:
    def label(v: int) -> str:
        return json.dumps(names[v]) if names else str(v)

    lines = ["digraph {"]
    for v in range(D.n):
        lines.append(f"  {v} [label={label(v)}];")
    for u, v in sorted(D.arcs()):
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_dot(text: str) -> OrientedGraph:
    """Parse the DOT dialect emitted by graph_to_dot (round-trips bit-exactly)."""
    vertices: set[int] = set()
    arcs = []
    for raw in text.splitlines():
        line = raw.strip().rstrip(";")
        if not line or line in ("digraph {", "}"):
            continue
        if "->" in line:
            left, right = line.split("->")
            arcs.append((int(left), int(right)))
        else:
            vertices.add(int(line.split("[", 1)[0]))
    n = max(vertices) + 1 if vertices else 0
    return OrientedGraph.from_arcs(n, arcs)


def hypergraph_to_dict(H: Hypergraph) -> dict:
    return {"n": H.n, "edges": [sorted(e) for e in H.edges]}


def hypergraph_from_dict(data: Any) -> Hypergraph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InputError("hypergraph JSON needs keys 'n' and 'edges'")
    return Hypergraph(data["n"], tuple(frozenset(e) for e in data["edges"]))


def mcc_instance_from_dict(data: Any) -> MccInstance:
    for key in ("n", "edges", "parts"):
        if not isinstance(data, dict) or key not in data:
            raise InputError("MCC JSON needs keys 'n', 'edges' and 'parts'")
    G = UndirectedGraph.from_edges(data["n"], [tuple(e) for e in data["edges"]])
    return MccInstance(G, tuple(tuple(part) for part in data["parts"]))
