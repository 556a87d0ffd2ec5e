"""Lifting multicuts of a base graph to a supergraph.

A labeling is a tuple of 0/1 ints in the canonical edge order of ``E'``.
Labelings are ordered by the integer value of their bit string with the
first canonical edge as most significant bit.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .graph import Edge, GraphError, LiftedPair, components, edge, enumerate_vw_paths
from .inequality import LinearInequality, lifted_system
from .partitions import iter_component_labels, multicut_to_decomposition

Labeling = tuple[int, ...]


def labeling_key(x: Sequence[int]) -> int:
    return int("".join(map(str, x)) or "0", 2)


def labeling_str(x: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in x)


def parse_labeling(pair: LiftedPair, text: str) -> Labeling:
    text = text.strip()
    if len(text) != len(pair.edges) or set(text) - {"0", "1"}:
        raise GraphError(f"expected a 01-string of length {len(pair.edges)}, got {text!r}")
    return tuple(int(c) for c in text)


def _check(pair: LiftedPair, x: Sequence[int]) -> Labeling:
    x = tuple(int(b) for b in x)
    if len(x) != len(pair.edges) or any(b not in (0, 1) for b in x):
        raise GraphError(f"labeling must be a 01-vector of length {len(pair.edges)}")
    return x


def labeling_from_components(pair: LiftedPair, lab: Sequence[int]) -> Labeling:
    return tuple(int(lab[u] != lab[v]) for u, v in pair.edges)


def labeling_from_nodeset(pair: LiftedPair, nodes: Iterable[int]) -> Labeling:
    """One block ``nodes`` (assumed connected in the base graph), singletons elsewhere."""
    inside = set(nodes)
    return tuple(0 if (u in inside and v in inside) else 1 for u, v in pair.edges)


def lift(pair: LiftedPair, m: Iterable[Edge]) -> frozenset[Edge]:
    """Multicut of G' induced by the decomposition of G whose multicut is ``m``."""
    pi = multicut_to_decomposition(pair.base, m)
    lab = pi.block_of
    return frozenset(e for e in pair.edges if lab[e[0]] != lab[e[1]])


def lift_labeling(pair: LiftedPair, m: Iterable[Edge]) -> Labeling:
    cut = lift(pair, m)
    return tuple(int(e in cut) for e in pair.edges)


def violated_inequalities(pair: LiftedPair, x: Sequence[int]) -> list[LinearInequality]:
    x = _check(pair, x)
    return [ineq for ineq in lifted_system(pair) if not ineq.satisfied(x)]


def satisfies_lifted_system(pair: LiftedPair, x: Sequence[int]) -> bool:
    x = _check(pair, x)
    return all(ineq.satisfied(x) for ineq in lifted_system(pair))


def is_lifted_by_components(pair: LiftedPair, x: Sequence[int]) -> bool:
    """x_uv = 0 exactly when u, v share a component of the 0-labelled base edges."""
    x = _check(pair, x)
    idx = pair.lifted.index
    lab = components(pair.n, [e for e in pair.base.edges if x[idx[e]] == 0])
    return all((x[i] == 0) == (lab[u] == lab[v]) for i, (u, v) in enumerate(pair.edges))


def is_lifted_multicut(pair: LiftedPair, x: Sequence[int], method: str = "components") -> bool:
    if method == "components":
        return is_lifted_by_components(pair, x)
    if method == "inequalities":
        return satisfies_lifted_system(pair, x)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=64)
def _vertices_with_labels(pair: LiftedPair) -> tuple[np.ndarray, np.ndarray]:
    pos_u = np.array([u for u, _ in pair.edges], dtype=np.intp)
    pos_v = np.array([v for _, v in pair.edges], dtype=np.intp)
    labs = np.array(iter_component_labels(pair.base), dtype=np.int32).reshape(-1, pair.n)
    rows = (labs[:, pos_u] != labs[:, pos_v]).astype(np.uint8)
    if len(pair.edges):
        # lexsort: last key is primary, so feed columns reversed
        order = np.lexsort(rows.T[::-1])
        rows, labs = rows[order], labs[order]
    rows.setflags(write=False)
    labs.setflags(write=False)
    return rows, labs


def lifted_vertex_array(pair: LiftedPair) -> np.ndarray:
    """All lifted multicut labelings as a read-only uint8 array, rows in canonical order."""
    return _vertices_with_labels(pair)[0]


def lifted_vertex_labels(pair: LiftedPair) -> np.ndarray:
    """Component representative of every node, row-aligned with :func:`lifted_vertex_array`."""
    return _vertices_with_labels(pair)[1]


def component_label_rows(pair: LiftedPair, X: np.ndarray) -> np.ndarray:
    """Per row of ``X``: smallest node of each node's component under the 0-labelled base edges."""
    rows = X.shape[0]
    L = np.tile(np.arange(pair.n, dtype=np.int32), (rows, 1))
    zero = [(u, v, X[:, pair.lifted.index[(u, v)]] == 0) for u, v in pair.base.edges]
    changed = True
    while changed:
        changed = False
        for u, v, z in zero:
            m = np.minimum(L[:, u], L[:, v])
            upd = z & ((L[:, u] != m) | (L[:, v] != m))
            if upd.any():
                L[upd, u] = m[upd]
                L[upd, v] = m[upd]
                changed = True
    return L


def enumerate_lifted_multicuts(pair: LiftedPair) -> list[Labeling]:
    return [tuple(r) for r in lifted_vertex_array(pair).tolist()]


def enumerate_by_filter(pair: LiftedPair) -> list[Labeling]:
    """Oracle route: all 2^|E'| labelings filtered through the inequality system."""
    d = len(pair.edges)
    out = []
    for k in range(1 << d):
        x = tuple((k >> (d - 1 - i)) & 1 for i in range(d))
        if satisfies_lifted_system(pair, x):
            out.append(x)
    return out


# -- hierarchy and levels ---------------------------------------------------


@lru_cache(maxsize=64)
def _f_paths(pair: LiftedPair) -> dict[Edge, list[tuple[tuple[int, ...], frozenset[Edge]]]]:
    """For every lifted-only edge f, its base paths with their F-chords (f excluded)."""
    F = set(pair.F)
    out = {}
    for f in pair.F:
        entries = []
        for p in enumerate_vw_paths(pair.base, *f):
            nodes = p.nodes
            chords = frozenset(
                edge(a, b)
                for i, a in enumerate(nodes)
                for b in nodes[i + 1:]
                if edge(a, b) in F and edge(a, b) != f
            )
            entries.append((nodes, chords))
        out[f] = entries
    return out


def compute_levels(pair: LiftedPair) -> dict[Edge, int]:
    """Level of every lifted-only edge in the hierarchy F_1 within F_2 within ...

    ``f`` enters at round ``n`` once some base path between its ends has all
    of its F-chords (pairs of path nodes joined by a lifted-only edge other
    than ``f``) already placed at a lower level.
    """
    paths = _f_paths(pair)
    level: dict[Edge, int] = {}
    n = 0
    while len(level) < len(pair.F):
        n += 1
        placed = set(level)
        new = [f for f in pair.F if f not in level and any(ch <= placed for _, ch in paths[f])]
        if not new:
            raise RuntimeError("hierarchy stalled; is the base graph connected?")
        for f in new:
            level[f] = n
    return level


def feasible_path(pair: LiftedPair, f: Edge, levels: dict[Edge, int] | None = None) -> tuple[int, ...]:
    """Shortest base path for ``f`` whose F-chords all sit below ``f``'s level.

    Ties go to the lexicographically smallest node sequence.
    """
    f = edge(*f)
    levels = compute_levels(pair) if levels is None else levels
    lf = levels[f]
    ok = [nodes for nodes, ch in _f_paths(pair)[f] if all(levels[c] < lf for c in ch)]
    return min(ok, key=lambda nodes: (len(nodes), nodes))


def f_feasible_labeling(pair: LiftedPair, f: Edge, levels: dict[Edge, int] | None = None) -> Labeling:
    """A lifted multicut with x_f = 0 and x_f' = 1 for every other f' at or above f's level.

    The nodes of :func:`feasible_path` form one component, all other nodes are
    singletons.
    """
    f = edge(*f)
    if f not in pair.F:
        raise GraphError(f"{f} is not a lifted-only edge")
    return labeling_from_nodeset(pair, feasible_path(pair, f, levels))


def dimension_witness(pair: LiftedPair) -> list[Labeling]:
    """|E'| + 1 affinely independent lifted multicuts.

    The all-ones vector, one vector per base edge with only that edge
    joined, and an f-feasible vector per lifted-only edge ordered by level.
    """
    d = len(pair.edges)
    out = [tuple([1] * d)]
    for e in pair.base.edges:
        x = [1] * d
        x[pair.lifted.index[e]] = 0
        out.append(tuple(x))
    levels = compute_levels(pair)
    for f in sorted(pair.F, key=lambda f: (levels[f], f)):
        out.append(f_feasible_labeling(pair, f, levels))
    return out
