"""JSON readers and writers for graphs, pairs, instances, decompositions and solutions."""

from __future__ import annotations

import json
from typing import Any

from .graph import Edge, Graph, GraphError, LiftedPair, edge
from .partitions import Decomposition
from .solver import CostFunction


def _edge_list(raw, n: int, what: str) -> list[Edge]:
    if not isinstance(raw, list):
        raise GraphError(f"{what}: 'edges' must be a list of [u, v] pairs")
    seen: set[Edge] = set()
    out = []
    for item in raw:
        if not (isinstance(item, (list, tuple)) and len(item) == 2 and all(isinstance(v, int) for v in item)):
            raise GraphError(f"{what}: malformed edge {item!r}")
        u, v = item
        if u == v:
            raise GraphError(f"{what}: self-loop at node {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"{what}: edge {[u, v]} has an endpoint outside [0, {n})")
        e = edge(u, v)
        if e in seen:
            raise GraphError(f"{what}: duplicate edge {list(e)}")
        seen.add(e)
        out.append(e)
    return out


def graph_from_json(data: dict, what: str = "graph") -> Graph:
    if not isinstance(data, dict) or "nodes" not in data or "edges" not in data:
        raise GraphError(f"{what}: expected an object with 'nodes' and 'edges'")
    n = data["nodes"]
    if not isinstance(n, int) or n < 0:
        raise GraphError(f"{what}: 'nodes' must be a non-negative integer")
    return Graph(n, tuple(_edge_list(data["edges"], n, what)))


def graph_to_json(g: Graph) -> dict:
    return {"nodes": g.n, "edges": [list(e) for e in g.edges]}


def pair_from_json(data: dict) -> LiftedPair:
    """``{"nodes": n, "base": [[u,v],...], "lifted": [[u,v],...]}``.

    ``lifted`` may list either all of E' or only the extra edges F; base
    edges are merged in either way.
    """
    if not isinstance(data, dict) or "nodes" not in data or "base" not in data:
        raise GraphError("pair: expected an object with 'nodes', 'base' and 'lifted'")
    n = data["nodes"]
    if not isinstance(n, int) or n < 0:
        raise GraphError("pair: 'nodes' must be a non-negative integer")
    base = _edge_list(data["base"], n, "pair.base")
    lifted = _edge_list(data.get("lifted", []), n, "pair.lifted")
    return LiftedPair.from_edges(n, base, [e for e in lifted if e not in set(base)])


def pair_to_json(pair: LiftedPair) -> dict:
    return {
        "nodes": pair.n,
        "base": [list(e) for e in pair.base.edges],
        "lifted": [list(e) for e in pair.edges],
    }


def instance_from_json(data: dict) -> tuple[LiftedPair, CostFunction]:
    pair = pair_from_json(data)
    if "costs" not in data or not isinstance(data["costs"], dict):
        raise GraphError("instance: missing 'costs' object")
    return pair, CostFunction.from_mapping(pair, data["costs"])


def instance_to_json(pair: LiftedPair, costs: CostFunction) -> dict:
    out = pair_to_json(pair)
    out["costs"] = costs.to_json(pair)
    return out


def decomposition_from_json(g: Graph, data: dict) -> Decomposition:
    if not isinstance(data, dict) or not isinstance(data.get("blocks"), list):
        raise GraphError("decomposition: expected {'blocks': [[ids...], ...]}")
    return Decomposition(g, tuple(tuple(b) for b in data["blocks"]))


def load_json(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
