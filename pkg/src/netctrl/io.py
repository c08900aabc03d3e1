"""Graph documents on disk and deterministic JSON reports.

Canonical form is JSON::

    {"nodes": ["v1", "v2"], "leader": "v1", "edges": [{"u": "v1", "v": "v2", "w": 1.0}]}

For hand-authoring, an edge-list text form is also accepted::

    leader v1
    node v9          # optional, for isolated nodes
    v1 v2 1.0
    v2 v3 0.5

Lines starting with '#' and text after '#' are ignored.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .graph import WeightedGraph
from .system import MasSystem


def _weight(raw: Any, where: str) -> float:
    if isinstance(raw, bool):
        raise InputError(f"{where}: edge weight must be a number")
    try:
        w = float(raw)
    except (TypeError, ValueError):
        raise InputError(f"{where}: edge weight must be a number, got {raw!r}") from None
    if not math.isfinite(w) or w <= 0:
        raise InputError(f"{where}: edge weight must be positive, got {raw!r}")
    return w


def _label(raw: Any, where: str) -> str:
    if not isinstance(raw, str) or not raw or any(c.isspace() for c in raw):
        raise InputError(f"{where}: node label must be a nonempty string without spaces, got {raw!r}")
    return raw


def system_from_document(doc: Any) -> MasSystem:
    if not isinstance(doc, dict):
        raise InputError("graph document must be a JSON object")
    for key in ("nodes", "leader", "edges"):
        if key not in doc:
            raise InputError(f"graph document is missing field {key!r}")
    if not isinstance(doc["nodes"], list) or not isinstance(doc["edges"], list):
        raise InputError("fields 'nodes' and 'edges' must be lists")
    nodes = [_label(v, f"nodes[{i}]") for i, v in enumerate(doc["nodes"])]
    edges = []
    for i, e in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(e, dict) or not {"u", "v", "w"} <= set(e):
            raise InputError(f"{where}: edge must be an object with fields u, v, w")
        edges.append((_label(e["u"], f"{where}.u"), _label(e["v"], f"{where}.v"), _weight(e["w"], f"{where}.w")))
    leader = _label(doc["leader"], "leader")
    try:
        g = WeightedGraph(nodes, edges)
    except InputError as exc:
        raise InputError(f"invalid graph: {exc}") from None
    return MasSystem(g, leader)


def document_from_system(sys: MasSystem) -> dict:
    return {
        "nodes": list(sys.nodes),
        "leader": sys.leader,
        "edges": [{"u": u, "v": v, "w": w} for u, v, w in sys.graph.edges],
    }


def parse_edge_list(text: str) -> MasSystem:
    leader = None
    nodes: dict[str, None] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"line {lineno}"
        if parts[0] == "leader":
            if len(parts) != 2 or leader is not None:
                raise InputError(f"{where}: expected a single 'leader <label>' line")
            leader = parts[1]
            nodes.setdefault(leader)
        elif parts[0] == "node":
            if len(parts) != 2:
                raise InputError(f"{where}: expected 'node <label>'")
            nodes.setdefault(parts[1])
        elif len(parts) == 3:
            u, v = parts[0], parts[1]
            edges.append((u, v, _weight(parts[2], where)))
            nodes.setdefault(u)
            nodes.setdefault(v)
        else:
            raise InputError(f"{where}: expected 'u v w', got {line!r}")
    if leader is None:
        raise InputError("edge list needs a 'leader <label>' line")
    try:
        g = WeightedGraph(list(nodes), edges)
    except InputError as exc:
        raise InputError(f"invalid graph: {exc}") from None
    return MasSystem(g, leader)


def load_system(path: str | Path) -> MasSystem:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return system_from_document(doc)
    return parse_edge_list(text)


def save_system(sys: MasSystem, path: str | Path) -> None:
    Path(path).write_text(dumps(document_from_system(sys)) + "\n", encoding="utf-8")


def canonical(obj: Any) -> Any:
    """Plain JSON types, floats rounded to 12 significant digits."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return canonical(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.12g}")
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2)
