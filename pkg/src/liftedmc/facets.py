"""Executable facet predicates for the lifted multicut polytope.

Each ``check_*`` function returns a :class:`Verdict` carrying the boolean
status of every condition it evaluated plus a witness for each failure, so
callers can compare against the brute-force oracle in :mod:`.polytope` and
point at the object responsible for a negative answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .graph import (
    Edge,
    Graph,
    GraphError,
    LiftedPair,
    connected_subsets,
    contract_edge,
    cut_vertices,
    distances,
    edge,
    enumerate_cycles,
    is_connected_mask,
    mask_of,
    nodes_of,
    reach_mask,
    separates,
)
from .inequality import Tag
from .lifting import labeling_from_nodeset


@dataclass
class Verdict:
    """``facet`` is True/False, or None when the theorem only gives necessary conditions."""

    facet: bool | None
    conditions: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, object] = field(default_factory=dict)

    @property
    def violated(self) -> list[str]:
        return [k for k, ok in self.conditions.items() if not ok]


def _popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=64)
def _connected_masks(g: Graph) -> tuple[int, ...]:
    return tuple(connected_subsets(g))


@lru_cache(maxsize=64)
def _connected_array(g: Graph) -> np.ndarray:
    return np.array(_connected_masks(g), dtype=np.int64)


@dataclass(frozen=True)
class VwcComponent:
    graph: Graph
    mask: int
    kind: str  # "proper" | "improper"
    fmask: int  # bit i set iff the i-th crossing lifted edge has both ends inside

    @cached_property
    def nodes(self) -> frozenset[int]:
        return frozenset(nodes_of(self.mask))

    @cached_property
    def edges(self) -> frozenset[Edge]:
        m = self.mask
        return frozenset(e for e in self.graph.edges if (m >> e[0]) & 1 and (m >> e[1]) & 1)

    def contains_edge(self, e: Edge) -> bool:
        return bool((self.mask >> e[0]) & 1 and (self.mask >> e[1]) & 1)


class VwCutContext:
    """A lifted edge ``f = vw`` together with a minimal vw-cut ``C`` of the base graph."""

    def __init__(self, pair: LiftedPair, f: Edge, cut: Iterable[Edge]):
        self.pair = pair
        self.f = edge(*f)
        self.cut = frozenset(edge(*e) for e in cut)
        if self.f not in pair.F:
            raise GraphError(f"{self.f} is not a lifted-only edge")
        if not self.cut or not self.cut <= pair.base.edge_set:
            raise GraphError("cut must be a nonempty set of base edges")
        v, w = self.f
        g = pair.base
        full = (1 << g.n) - 1
        rest = Graph(g.n, tuple(e for e in g.edges if e not in self.cut))
        side_v = reach_mask(rest.adj_mask, v, full)
        side_w = reach_mask(rest.adj_mask, w, full)
        if (side_v >> w) & 1 or side_v | side_w != full:
            raise GraphError(f"{sorted(self.cut)} is not a minimal {v}-{w} cut")
        for a, b in self.cut:
            if ((side_v >> a) & 1) == ((side_v >> b) & 1):
                raise GraphError(f"cut edge {(a, b)} does not cross; cut is not minimal")
        self.v, self.w = v, w
        self.side_v = side_v
        self.side_w = side_w

    @cached_property
    def V_v(self) -> frozenset[int]:
        return frozenset(nodes_of(self.side_v))

    @cached_property
    def V_w(self) -> frozenset[int]:
        return frozenset(nodes_of(self.side_w))

    def crosses(self, e: Edge) -> bool:
        return ((self.side_v >> e[0]) & 1) != ((self.side_v >> e[1]) & 1)

    @cached_property
    def F_cross(self) -> tuple[Edge, ...]:
        return tuple(g for g in self.pair.F if g != self.f and self.crosses(g))

    @cached_property
    def crossing_graph(self) -> Graph:
        return Graph(self.pair.n, tuple(set(self.F_cross) | self.cut))

    def oriented(self, e: Edge) -> tuple[int, int]:
        """(endpoint on v's side, endpoint on w's side) of a crossing edge."""
        a, b = e
        return (a, b) if (self.side_v >> a) & 1 else (b, a)

    @cached_property
    def components(self) -> list[VwcComponent]:
        """All (vw,C)-connected components, proper ones first, then by node mask."""
        g = self.pair.base
        M = _connected_array(g)

        def has(a):
            return ((M >> a) & 1).astype(bool)

        improper = ((M & ~self.side_v) == 0) | ((M & ~self.side_w) == 0)
        inside = sum((has(a) & has(b)).astype(np.int64) for a, b in self.cut)
        proper = has(self.v) & has(self.w) & (inside == 1)
        fmask = np.zeros(M.shape[0], dtype=np.int64)
        for i, (a, b) in enumerate(self.F_cross):
            fmask |= (has(a) & has(b)).astype(np.int64) << i
        out = []
        for kind, sel in (("proper", proper), ("improper", improper)):
            for j in np.flatnonzero(sel):
                out.append(VwcComponent(g, int(M[j]), kind, int(fmask[j])))
        out.sort(key=lambda c: (c.kind != "proper", c.mask))
        return out

    @cached_property
    def proper(self) -> list[VwcComponent]:
        return [c for c in self.components if c.kind == "proper"]

    @cached_property
    def _v0(self) -> tuple[int, int, bool]:
        if not self.proper:
            return self.side_v, self.side_w, True
        common = -1
        for c in self.proper:
            common &= c.mask
        return common & self.side_v, common & self.side_w, False

    @property
    def V0_v(self) -> frozenset[int]:
        return frozenset(nodes_of(self._v0[0]))

    @property
    def V0_w(self) -> frozenset[int]:
        return frozenset(nodes_of(self._v0[1]))

    @property
    def V0_by_convention(self) -> bool:
        """True when no proper component exists and V_0 fell back to whole sides."""
        return self._v0[2]

    def fset(self, edges: Iterable[Edge]) -> int:
        pos = {e: i for i, e in enumerate(self.F_cross)}
        return sum(1 << pos[edge(*e)] for e in edges)

    def fedges(self, fmask: int) -> list[Edge]:
        return [e for i, e in enumerate(self.F_cross) if (fmask >> i) & 1]


def enumerate_vwc_components(ctx: VwCutContext) -> list[VwcComponent]:
    return list(ctx.components)


# -- cut conditions ------------------------------------------------------------


def _subsets(mask_bits: list[int]):
    """Nonempty sub-masks of the given single-bit list, by size then value."""
    out = []
    for r in range(1, len(mask_bits) + 1):
        for combo in combinations(mask_bits, r):
            out.append(sum(combo))
    return out


def _crossing_paths(ctx: VwCutContext):
    """Simple paths of the crossing graph from V(v,C) to V(w,C), as node tuples."""
    g = ctx.crossing_graph
    out = []
    for start in sorted(ctx.V_v):
        if not g.adj[start]:
            continue
        stack = [start]
        on = {start}

        def rec():
            last = stack[-1]
            for x in sorted(g.adj[last]):
                if x in on:
                    continue
                stack.append(x)
                on.add(x)
                if x in ctx.V_w:
                    out.append(tuple(stack))
                rec()
                on.discard(x)
                stack.pop()

        rec()
    return out


def check_cut_conditions(ctx: VwCutContext) -> Verdict:
    """Evaluate the five necessary conditions for the cut inequality of ``ctx``.

    ``facet`` is False when one fails and None otherwise (the conditions are
    only necessary in general).
    """
    comps = ctx.components
    proper = ctx.proper
    conds: dict[str, bool] = {}
    wit: dict[str, object] = {}
    nF = len(ctx.F_cross)
    bits = [1 << i for i in range(nF)]

    # C1: every cut edge lies in some (vw,C)-connected component
    by_edge = {e: [c.fmask for c in comps if c.contains_edge(e)] for e in sorted(ctx.cut)}
    missing = [e for e, cs in by_edge.items() if not cs]
    conds["C1"] = not missing
    if missing:
        wit["C1"] = {"edge": missing[0], "edges": missing}

    # C2: every nonempty F is counted differently by two components sharing a cut edge
    bad = []
    for F in _subsets(bits):
        if not any(len({_popcount(m & F) for m in cs}) >= 2 for cs in by_edge.values()):
            bad.append(F)
    conds["C2"] = not bad
    if bad:
        wit["C2"] = {"F": ctx.fedges(bad[0]), "all_F": [ctx.fedges(F) for F in bad]}

    # C3: k ranges over 0..|F|; larger k cannot match a count
    bad3 = []
    for i in range(nF):
        fp = 1 << i
        star = [c.fmask for c in comps if c.fmask & fp]
        other = [c.fmask for c in comps if not c.fmask & fp]
        for F in _subsets([b for b in bits if b != fp]):
            cs = {_popcount(m & F) for m in star}
            co = {_popcount(m & F) for m in other}
            if not star:
                ks = list(range(_popcount(F) + 1))
            elif co == {0} and len(cs) == 1:
                ks = [next(iter(cs))]
            else:
                ks = []
            for k in ks:
                bad3.append((ctx.F_cross[i], ctx.fedges(F), k))
    conds["C3"] = not bad3
    if bad3:
        fp, F, k = bad3[0]
        wit["C3"] = {"f_prime": fp, "F": F, "k": k, "count": len(bad3)}

    # C4: alternating paths of the crossing graph
    single = next(iter(ctx.cut)) if len(ctx.cut) == 1 else None
    bad4 = []
    for nodes in _crossing_paths(ctx):
        if single is not None and len(nodes) == 2 and edge(*nodes) == single:
            # its equality coincides with the cut inequality itself
            continue
        vp, wp = nodes[0], nodes[-1]
        pm = mask_of(nodes)
        pv, pw = pm & ctx.side_v, pm & ctx.side_w
        ok = False
        for c in proper:
            s = c.mask
            a = not (s >> vp) & 1 or bool(pw & ~s)
            b = not (s >> wp) & 1 or bool(pv & ~s)
            if a and b:
                ok = True
                break
        if not ok:
            bad4.append(nodes)
    conds["C4"] = not bad4
    if bad4:
        p = bad4[0]
        wit["C4"] = {"path": list(p), "edges": [edge(a, b) for a, b in zip(p, p[1:])], "count": len(bad4)}

    # C5: cycles of the crossing graph
    bad5 = []
    for cyc in enumerate_cycles(ctx.crossing_graph):
        cm = mask_of(cyc)
        cv, cw = cm & ctx.side_v, cm & ctx.side_w
        if not any((cv & ~c.mask) and (cw & ~c.mask) for c in proper):
            bad5.append(cyc)
    conds["C5"] = not bad5
    if bad5:
        y = bad5[0]
        wit["C5"] = {
            "cycle": list(y),
            "edges": sorted(edge(a, b) for a, b in zip(y, y[1:] + y[:1])),
            "all_cycles": [sorted(edge(a, b) for a, b in zip(c, c[1:] + c[:1])) for c in bad5],
        }

    facet = False if not all(conds.values()) else None
    return Verdict(facet, conds, wit)


def check_single_edge_cut_facet(ctx: VwCutContext) -> Verdict:
    """Exact facet test for a cut consisting of a single base edge."""
    if len(ctx.cut) != 1:
        raise GraphError("single-edge cut test needs |C| = 1")
    V0v, V0w = ctx.V0_v, ctx.V0_w
    wit: dict[str, object] = {"V0_v": sorted(V0v), "V0_w": sorted(V0w)}
    oriented = [(fp, *ctx.oriented(fp)) for fp in ctx.F_cross]
    bad_a = [fp for fp, a, b in oriented if a in V0v and b in V0w]
    bad_b = []
    for (f1, a1, b1), (f2, a2, b2) in combinations(oriented, 2):
        if (a1 == a2 and b1 in V0w and b2 in V0w) or (b1 == b2 and a1 in V0v and a2 in V0v):
            bad_b.append((f1, f2))
    conds = {"a": not bad_a, "b": not bad_b}
    if bad_a:
        wit["a"] = {"f_prime": bad_a[0]}
    if bad_b:
        wit["b"] = {"pair": list(bad_b[0])}
    return Verdict(all(conds.values()), conds, wit)


# -- box and cycle/path facets -------------------------------------------------


def check_box_upper(pair: LiftedPair, e: Edge) -> Verdict:
    """x_e <= 1 is a facet iff no other lifted-only f = vw has e joining two v-w cut vertices."""
    e = edge(*e)
    if e not in pair.lifted.index:
        raise GraphError(f"{e} is not an edge of the lifted graph")
    for f in pair.F:
        if f == e:
            continue
        cv = cut_vertices(pair.base, *f)
        if e[0] in cv and e[1] in cv:
            return Verdict(False, {"no_cut_vertex_pair": False}, {"no_cut_vertex_pair": {"f": f, "pair": e}})
    return Verdict(True, {"no_cut_vertex_pair": True})


def _triangle_apexes(pair: LiftedPair, e: Edge) -> list[int]:
    u, v = e
    return sorted(pair.lifted.adj[u] & pair.lifted.adj[v])


def check_box_lower(pair: LiftedPair, e: Edge) -> Verdict:
    """0 <= x_e: exact triangle test for base edges, necessary conditions (a)-(c) otherwise."""
    e = edge(*e)
    if e not in pair.lifted.index:
        raise GraphError(f"{e} is not an edge of the lifted graph")
    apex = _triangle_apexes(pair, e)
    conds = {"a": not apex}
    wit: dict[str, object] = {}
    if apex:
        wit["a"] = {"triangle": sorted({e[0], e[1], apex[0]})}
    if pair.is_base(e):
        return Verdict(conds["a"], conds, wit)

    u, v = e
    cv = sorted(cut_vertices(pair.base, u, v))
    dist_g = {a: distances(pair.base, a) for a in cv}
    bad_b = None
    for a, b in combinations(cv, 2):
        if {a, b} == {u, v}:
            continue
        if dist_g[a][b] < 3 or pair.lifted.has_edge(a, b):
            bad_b = {"pair": [a, b], "dist_G": dist_g[a][b], "adjacent_in_lifted": pair.lifted.has_edge(a, b)}
            break
    conds["b"] = bad_b is None
    if bad_b:
        wit["b"] = bad_b

    bad_c = None
    cvs = set(cv)
    lifted = pair.lifted
    for s, s2 in lifted.edges:
        for t in sorted(lifted.adj[s] & lifted.adj[s2]):
            if t in cvs and separates(pair.base, u, v, (s, s2)):
                bad_c = {"s": s, "s_prime": s2, "t": t}
                break
        if bad_c:
            break
    conds["c"] = bad_c is None
    if bad_c:
        wit["c"] = bad_c
    return Verdict(False if not all(conds.values()) else None, conds, wit)


def _chordless_in(g: Graph, nodes: Iterable[int], edges: frozenset[Edge]) -> list[Edge]:
    nodes = sorted(set(nodes))
    return [edge(a, b) for a, b in combinations(nodes, 2) if g.has_edge(a, b) and edge(a, b) not in edges]


def _as_cycle(edges: frozenset[Edge]) -> bool:
    deg: dict[int, int] = {}
    for a, b in edges:
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    if len(edges) < 3 or any(d != 2 for d in deg.values()):
        return False
    g = Graph(max(deg) + 1, tuple(edges))
    return is_connected_mask(g, mask_of(deg))


def check_cycle_path_facet(pair: LiftedPair, tag: Tag) -> Verdict:
    """Cycle/path inequalities are facets iff the closed cycle has no chord in G'."""
    support = frozenset(edge(*e) for e in tag.support)
    if tag.family == "cycle":
        if not support <= pair.base.edge_set or tag.edge not in support or not _as_cycle(support):
            raise GraphError(f"malformed cycle tag {tag}")
        closed = support
    elif tag.family == "path":
        if tag.edge not in pair.F or not support <= pair.base.edge_set:
            raise GraphError(f"malformed path tag {tag}")
        closed = support | {tag.edge}
        if not _as_cycle(closed):
            raise GraphError(f"path in {tag} does not join the ends of {tag.edge}")
    else:
        raise GraphError(f"tag family {tag.family!r} is not cycle/path")
    nodes = {u for e in closed for u in e}
    chords = _chordless_in(pair.lifted, nodes, closed)
    v = Verdict(not chords, {"chordless": not chords})
    if chords:
        v.witnesses["chordless"] = {"chord": chords[0]}
    return v


# -- helpers used by verification ---------------------------------------------


def contracted_pair(pair: LiftedPair, e: Edge) -> LiftedPair:
    """Contract a base edge in both graphs with the same relabelling."""
    e = edge(*e)
    if not pair.is_base(e):
        raise GraphError(f"{e} is not a base edge")
    gb, relabel = contract_edge(pair.base, e)
    gl, relabel2 = contract_edge(pair.lifted, e)
    assert relabel == relabel2
    return LiftedPair(gb, gl)


def component_labeling(ctx: VwCutContext, comp: VwcComponent) -> tuple[int, ...]:
    """Zero inside the component, one elsewhere."""
    return labeling_from_nodeset(ctx.pair, comp.nodes)


def classify_zero_components(ctx: VwCutContext, x) -> list[tuple[frozenset[int], str]]:
    """Maximal components of the 0-labelled base edges, classified w.r.t. ``ctx``."""
    pair = ctx.pair
    idx = pair.lifted.index
    zero = Graph(pair.n, tuple(e for e in pair.base.edges if int(x[idx[e]]) == 0))
    full = (1 << pair.n) - 1
    seen = 0
    out = []
    for u in range(pair.n):
        if (seen >> u) & 1:
            continue
        m = reach_mask(zero.adj_mask, u, full)
        seen |= m
        if m & ~ctx.side_v == 0 or m & ~ctx.side_w == 0:
            kind = "improper"
        else:
            inside = sum(1 for a, b in ctx.cut if (m >> a) & 1 and (m >> b) & 1)
            kind = "proper" if (m >> ctx.v) & 1 and (m >> ctx.w) & 1 and inside == 1 else "neither"
        out.append((frozenset(nodes_of(m)), kind))
    return out
