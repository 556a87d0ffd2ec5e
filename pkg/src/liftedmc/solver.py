"""Minimum cost lifted multicut: exact enumeration, branch and bound, greedy merging,
and separation oracles for the cycle, path and cut families.

Objectives are integers; separation runs in exact rationals.
"""

from __future__ import annotations

import heapq
import os
import time
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .graph import Edge, Graph, GraphError, LiftedPair, edge, reach_mask
from .inequality import LinearInequality, cut_inequality, cycle_inequality, path_inequality
from .lifting import Labeling, labeling_from_components, labeling_key, labeling_str, lifted_vertex_array

DEFAULT_MAX_NODES = 12


class InstanceTooLarge(RuntimeError):
    pass


def max_nodes_guard() -> int:
    raw = os.environ.get("LMC_MAX_NODES")
    if raw is None:
        return DEFAULT_MAX_NODES
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"LMC_MAX_NODES must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class CostFunction:
    """Integer cost per lifted edge, aligned with the canonical edge order."""

    costs: tuple[int, ...]

    def __post_init__(self):
        for c in self.costs:
            if isinstance(c, bool) or not isinstance(c, (int, np.integer)):
                raise GraphError(f"costs must be integers, got {c!r}")
        object.__setattr__(self, "costs", tuple(int(c) for c in self.costs))

    @classmethod
    def from_mapping(cls, pair: LiftedPair, data: Mapping) -> "CostFunction":
        index = pair.lifted.index
        vals: dict[Edge, int] = {}
        for key, c in data.items():
            if isinstance(key, str):
                a, _, b = key.partition(",")
                e = edge(int(a), int(b))
            else:
                e = edge(*key)
            if e not in index:
                raise GraphError(f"cost given for {e}, which is not an edge of the lifted graph")
            vals[e] = c
        missing = [e for e in pair.edges if e not in vals]
        if missing:
            raise GraphError(f"no cost for edge {missing[0]}")
        return cls(tuple(vals[e] for e in pair.edges))

    def check(self, pair: LiftedPair) -> None:
        if len(self.costs) != len(pair.edges):
            raise GraphError(f"{len(self.costs)} costs for {len(pair.edges)} edges")

    def objective(self, x: Sequence[int]) -> int:
        return sum(c * int(b) for c, b in zip(self.costs, x))

    def to_json(self, pair: LiftedPair) -> dict:
        return {f"{u},{v}": c for (u, v), c in zip(pair.edges, self.costs)}


@dataclass
class Solution:
    labeling: Labeling
    objective: int
    certificate: str  # "optimal" | "heuristic"
    stats: dict = field(default_factory=dict)
    wall_time: float = 0.0  # kept out of to_json so payloads are reproducible

    def to_json(self) -> dict:
        return {
            "labeling": labeling_str(self.labeling),
            "objective": self.objective,
            "certificate": self.certificate,
            "stats": self.stats,
        }


def _costs(pair: LiftedPair, c) -> CostFunction:
    if not isinstance(c, CostFunction):
        c = CostFunction(tuple(c))
    c.check(pair)
    return c


def solve_exact(pair: LiftedPair, c, force: bool = False, max_nodes: int | None = None) -> Solution:
    """Minimum over all lifted multicuts; ties go to the smallest labeling."""
    c = _costs(pair, c)
    limit = max_nodes_guard() if max_nodes is None else max_nodes
    if pair.n > limit and not force:
        raise InstanceTooLarge(f"{pair.n} nodes exceeds the enumeration guard of {limit} (use force)")
    t0 = time.perf_counter()
    X = lifted_vertex_array(pair)
    obj = X.astype(np.int64) @ np.array(c.costs, dtype=np.int64)
    i = int(np.argmin(obj))  # rows are sorted, so the first minimum is the smallest labeling
    x = tuple(int(b) for b in X[i])
    return Solution(x, int(obj[i]), "optimal", {"nodes_explored": int(X.shape[0])}, time.perf_counter() - t0)


def solve_branch_and_bound(pair: LiftedPair, c) -> Solution:
    """Depth-first over base-edge labels (0 first) with a negative-cost lower bound."""
    c = _costs(pair, c)
    t0 = time.perf_counter()
    n = pair.n
    base = pair.base.edges
    idx = pair.lifted.index
    cost = c.costs
    base_pos = [idx[e] for e in base]
    lifted_only = [(idx[e], e) for e in pair.F]
    neg = [min(0, v) for v in cost]
    best: list = [None, None, None]  # objective, key, labeling
    explored = 0
    lab = list(range(n))
    ones: list[Edge] = []

    def merge(a, b):
        old, new = (a, b) if a > b else (b, a)
        changed = [u for u in range(n) if lab[u] == old]
        for u in changed:
            lab[u] = new
        return changed, old

    def bound(i, fixed):
        lb = fixed
        for j in range(i, len(base)):
            u, v = base[j]
            if lab[u] != lab[v]:
                lb += neg[base_pos[j]]
        for p, (u, v) in lifted_only:
            if lab[u] != lab[v]:
                lb += neg[p]
        return lb

    def rec(i, fixed):
        nonlocal explored
        explored += 1
        while i < len(base) and lab[base[i][0]] == lab[base[i][1]]:
            i += 1
        if i == len(base):
            x = labeling_from_components(pair, lab)
            val = c.objective(x)
            key = labeling_key(x)
            if best[0] is None or (val, key) < (best[0], best[1]):
                best[:] = [val, key, x]
            return
        if best[0] is not None and bound(i, fixed) > best[0]:
            return
        u, v = base[i]
        lu, lv = lab[u], lab[v]
        if not any({lab[a], lab[b]} == {lu, lv} for a, b in ones):
            changed, old = merge(lu, lv)
            rec(i + 1, fixed)
            for w in changed:
                lab[w] = old
        ones.append(base[i])
        rec(i + 1, fixed + cost[base_pos[i]])
        ones.pop()

    rec(0, 0)
    return Solution(best[2], best[0], "optimal", {"nodes_explored": explored}, time.perf_counter() - t0)


def solve_greedy(pair: LiftedPair, c) -> Solution:
    """Start from singletons; merge the G-adjacent pair of blocks that lowers the
    objective most, ties to the smallest (min representative, other representative)."""
    c = _costs(pair, c)
    t0 = time.perf_counter()
    n = pair.n
    lab = list(range(n))  # representative = smallest member
    merges = 0
    while True:
        between: dict[tuple[int, int], int] = {}
        adjacent: set[tuple[int, int]] = set()
        for (u, v), cv in zip(pair.edges, c.costs):
            a, b = sorted((lab[u], lab[v]))
            if a == b:
                continue
            between[(a, b)] = between.get((a, b), 0) + cv
        for u, v in pair.base.edges:
            a, b = sorted((lab[u], lab[v]))
            if a != b:
                adjacent.add((a, b))
        best = None
        for key in sorted(adjacent):
            delta = -between.get(key, 0)
            if delta < 0 and (best is None or delta < best[0]):
                best = (delta, key)
        if best is None:
            break
        a, b = best[1]
        lab = [a if r == b else r for r in lab]
        merges += 1
    x = labeling_from_components(pair, lab)
    return Solution(x, c.objective(x), "heuristic", {"merges": merges}, time.perf_counter() - t0)


# -- separation -----------------------------------------------------------------


def _point(pair: LiftedPair, x) -> tuple[Fraction, ...]:
    if isinstance(x, Mapping):
        x = [x[e] for e in pair.edges]
    pt = tuple(Fraction(v) if not isinstance(v, str) else Fraction(v) for v in x)
    if len(pt) != len(pair.edges):
        raise ValueError(f"point has {len(pt)} entries, pair has {len(pair.edges)} edges")
    for e, v in zip(pair.edges, pt):
        if not 0 <= v <= 1:
            raise ValueError(f"x{e} = {v} is outside [0, 1]")
    return pt


def _dijkstra(g: Graph, weight: dict[Edge, Fraction], s: int, t: int, skip: Edge | None = None):
    """Shortest s-t path as (length, node list); ties resolved by node order."""
    dist = {s: Fraction(0)}
    prev: dict[int, int] = {}
    heap = [(Fraction(0), s)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == t:
            break
        for w in sorted(g.adj[u]):
            e = edge(u, w)
            if e == skip or w in done:
                continue
            nd = d + weight[e]
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                prev[w] = u
                heapq.heappush(heap, (nd, w))
    if t not in done:
        return None, None
    path = [t]
    while path[-1] != s:
        path.append(prev[path[-1]])
    return dist[t], path[::-1]


def _chordless_reduce(pair: LiftedPair, x, cyc: list[int], e: Edge) -> tuple[list[Edge], Edge]:
    """Split a violated cycle along chords until it is chordless, keeping the more violated half."""
    g = pair.base
    xv = {k: v for k, v in zip(pair.edges, x)}

    def viol(nodes, lead):
        es = [edge(a, b) for a, b in zip(nodes, nodes[1:] + nodes[:1])]
        return xv[lead] - sum((xv[h] for h in es if h != lead), Fraction(0)), es

    while True:
        pos = {u: i for i, u in enumerate(cyc)}
        k = len(cyc)
        chord = None
        for i, a in enumerate(cyc):
            for b in sorted(g.adj[a]):
                j = pos.get(b)
                if j is not None and j > i and (j - i) % k not in (1, k - 1):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return [edge(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1])], e
        i, j = chord
        h = edge(cyc[i], cyc[j])
        inner = cyc[i:j + 1]
        outer = cyc[j:] + cyc[:i + 1]
        # e lies on exactly one side
        e_inner = any(edge(a, b) == e for a, b in zip(inner, inner[1:]))
        with_e, without = (inner, outer) if e_inner else (outer, inner)
        v1, _ = viol(with_e, e)
        v2, _ = viol(without, h)
        if v1 >= v2:
            cyc = with_e
        else:
            cyc, e = without, h


def _separate_cycles(pair: LiftedPair, x) -> LinearInequality | None:
    xv = dict(zip(pair.edges, x))
    best = None
    for e in pair.base.edges:
        d, path = _dijkstra(pair.base, xv, e[0], e[1], skip=e)
        if path is None:
            continue
        v = xv[e] - d
        if v > 0 and (best is None or v > best[0]):
            best = (v, path, e)
    if best is None:
        return None
    _, path, e = best
    cyc, lead = _chordless_reduce(pair, x, path, e)
    return cycle_inequality(pair, cyc, lead)


def _separate_paths(pair: LiftedPair, x) -> LinearInequality | None:
    xv = dict(zip(pair.edges, x))
    best = None
    for f in pair.F:
        d, path = _dijkstra(pair.base, xv, f[0], f[1])
        v = xv[f] - d
        if v > 0 and (best is None or v > best[0]):
            best = (v, f, path)
    if best is None:
        return None
    _, f, path = best
    return path_inequality(pair, f, [edge(a, b) for a, b in zip(path, path[1:])])


def _min_cut(g: Graph, cap: dict[Edge, Fraction], s: int, t: int) -> tuple[Fraction, int]:
    """Edmonds-Karp on the symmetric digraph; returns (value, mask of the s side)."""
    flow: dict[tuple[int, int], Fraction] = {}
    value = Fraction(0)

    def residual(u, w):
        # flow is antisymmetric, each undirected edge has capacity in both directions
        return cap[edge(u, w)] - flow.get((u, w), Fraction(0))

    while True:
        prev = {s: None}
        q = deque([s])
        while q and t not in prev:
            u = q.popleft()
            for w in sorted(g.adj[u]):
                if w not in prev and residual(u, w) > 0:
                    prev[w] = u
                    q.append(w)
        if t not in prev:
            side = 0
            for u in prev:
                side |= 1 << u
            return value, side
        path = [t]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        push = min(residual(a, b) for a, b in zip(path, path[1:]))
        for a, b in zip(path, path[1:]):
            flow[(a, b)] = flow.get((a, b), Fraction(0)) + push
            flow[(b, a)] = flow.get((b, a), Fraction(0)) - push
        value += push


def minimal_cut_from_side(g: Graph, side: int, v: int, w: int) -> list[Edge]:
    """Shrink the cut of an s-side mask to an inclusion-minimal v-w cut inside it."""
    full = (1 << g.n) - 1
    B = reach_mask(g.adj_mask, w, full & ~side)
    A = reach_mask(g.adj_mask, v, full & ~B)
    return [e for e in g.edges if ((A >> e[0]) & 1) != ((A >> e[1]) & 1)]


def _separate_cuts(pair: LiftedPair, x) -> LinearInequality | None:
    xv = dict(zip(pair.edges, x))
    cap = {e: 1 - xv[e] for e in pair.base.edges}
    best = None
    for f in pair.F:
        val, side = _min_cut(pair.base, cap, *f)
        v = (1 - xv[f]) - val
        if v > 0 and (best is None or v > best[0]):
            best = (v, f, side)
    if best is None:
        return None
    _, f, side = best
    return cut_inequality(pair, f, minimal_cut_from_side(pair.base, side, *f))


def separate(pair: LiftedPair, x) -> list[LinearInequality]:
    """One violated inequality per family (cycle, path, cut), when any exists."""
    pt = _point(pair, x)
    out = []
    for fam in (_separate_cycles, _separate_paths, _separate_cuts):
        ineq = fam(pair, pt)
        if ineq is not None:
            out.append(ineq)
    return out
