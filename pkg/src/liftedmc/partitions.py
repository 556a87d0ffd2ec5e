"""Decompositions, multicuts and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .graph import (
    Edge,
    Graph,
    GraphError,
    bfs_path,
    components,
    edge,
    enumerate_chordless_cycles,
    enumerate_cycles,
    cycle_edges,
    is_connected_mask,
    mask_of,
)

EdgeSubset = frozenset  # frozenset[Edge]


class NotAMulticut(ValueError):
    """Raised with a witness: a cut edge whose endpoints stay connected."""

    def __init__(self, witness: Edge, path: list[int]):
        self.witness = witness
        self.path = path
        super().__init__(f"edge {witness} is cut but its endpoints are joined by {path}")


@dataclass(frozen=True)
class Decomposition:
    graph: Graph
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        flat = [u for b in blocks for u in b]
        if any(len(b) == 0 for b in blocks):
            raise GraphError("empty block")
        if sorted(flat) != list(range(self.graph.n)):
            raise GraphError("blocks do not partition the node set")
        for b in blocks:
            if not is_connected_mask(self.graph, mask_of(b)):
                raise GraphError(f"block {list(b)} does not induce a connected subgraph")
        object.__setattr__(self, "blocks", blocks)

    @property
    def block_of(self) -> list[int]:
        lab = [0] * self.graph.n
        for i, b in enumerate(self.blocks):
            for u in b:
                lab[u] = i
        return lab

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks]}


def blocks_from_labels(labels: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    groups: dict[int, list[int]] = {}
    for u, lab in enumerate(labels):
        groups.setdefault(lab, []).append(u)
    return tuple(sorted(tuple(b) for b in groups.values()))


def decomposition_to_multicut(pi: Decomposition) -> EdgeSubset:
    lab = pi.block_of
    return frozenset(e for e in pi.graph.edges if lab[e[0]] != lab[e[1]])


def _check_subset(g: Graph, m: Iterable[Edge]) -> frozenset[Edge]:
    m = frozenset(edge(*e) for e in m)
    stray = m - g.edge_set
    if stray:
        raise GraphError(f"edge {min(stray)} is not an edge of the graph")
    return m


def multicut_to_decomposition(g: Graph, m: Iterable[Edge]) -> Decomposition:
    m = _check_subset(g, m)
    kept = [e for e in g.edges if e not in m]
    lab = components(g.n, kept)
    for e in sorted(m):
        if lab[e[0]] == lab[e[1]]:
            path = bfs_path(Graph(g.n, tuple(kept)), e[0], e[1])
            raise NotAMulticut(e, path)
    return Decomposition(g, blocks_from_labels(lab))


def is_multicut(g: Graph, m: Iterable[Edge]) -> bool:
    """Component test: no cut edge has both ends in one component of (V, E \\ m)."""
    m = _check_subset(g, m)
    lab = components(g.n, [e for e in g.edges if e not in m])
    return all(lab[u] != lab[v] for u, v in m)


def is_multicut_by_cycles(g: Graph, m: Iterable[Edge], chordless_only: bool = True) -> bool:
    """Cycle-inequality test: no cycle meets ``m`` in exactly one edge."""
    m = _check_subset(g, m)
    if chordless_only:
        cycles = enumerate_chordless_cycles(g)
    else:
        cycles = [cycle_edges(c) for c in enumerate_cycles(g)]
    return all(len(c & m) != 1 for c in cycles)


def enumerate_set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` (block label per element)."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(rgs)
            return
        for b in range(top + 2):
            rgs[i] = b
            yield from rec(i + 1, max(top, b))

    rgs[0] = 0
    yield from rec(1, 0)


def enumerate_decompositions_rgs(g: Graph) -> Iterator[Decomposition]:
    """Set partitions filtered for connected blocks. Bell(n) work."""
    for rgs in enumerate_set_partitions(g.n):
        blocks = blocks_from_labels(rgs)
        if all(is_connected_mask(g, mask_of(b)) for b in blocks):
            yield Decomposition(g, blocks)


def iter_component_labels(g: Graph) -> list[list[int]]:
    """Component root of every node, once per decomposition of ``g``.

    Backtracks over edges in canonical order: a 0 merges two components
    (refused if a 1-labelled edge already joins them), a 1 is only allowed
    between distinct components. Every consistent partial labelling extends,
    so the search has no dead ends and costs O(#decompositions * |E|).
    """
    n = g.n
    edges = g.edges
    m = len(edges)
    parent = list(range(n))
    ones: list[Edge] = []
    out: list[list[int]] = []

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def rec(i):
        while i < m:
            u, v = edges[i]
            ru, rv = find(u), find(v)
            if ru != rv:
                break
            i += 1
        if i == m:
            out.append([find(u) for u in range(n)])
            return
        for a, b in ones:
            ra, rb = find(a), find(b)
            if (ra == ru and rb == rv) or (ra == rv and rb == ru):
                break
        else:
            lo, hi = (ru, rv) if ru < rv else (rv, ru)
            parent[hi] = lo
            rec(i + 1)
            parent[hi] = hi
        ones.append(edges[i])
        rec(i + 1)
        ones.pop()

    rec(0)
    return out


def enumerate_decompositions(g: Graph) -> list[Decomposition]:
    out = [Decomposition(g, blocks_from_labels(lab)) for lab in iter_component_labels(g)]
    out.sort(key=lambda d: d.blocks)
    return out


def enumerate_multicuts(g: Graph) -> list[EdgeSubset]:
    out = []
    for lab in iter_component_labels(g):
        out.append(frozenset(e for e in g.edges if lab[e[0]] != lab[e[1]]))
    out.sort(key=lambda m: subset_to_bits(g, m))
    return out


def subset_to_bits(g: Graph, m: Iterable[Edge]) -> str:
    m = set(m)
    return "".join("1" if e in m else "0" for e in g.edges)


def subset_from_bits(g: Graph, bits: str) -> EdgeSubset:
    if len(bits) != g.m or set(bits) - {"0", "1"}:
        raise GraphError(f"expected a 01-string of length {g.m}, got {bits!r}")
    return frozenset(e for e, b in zip(g.edges, bits) if b == "1")


@dataclass(frozen=True)
class EquivalenceRelation:
    """Canonical representative (smallest class member) per node."""

    rep: tuple[int, ...]

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def classes(self) -> list[tuple[int, ...]]:
        return list(blocks_from_labels(self.rep))


def multicut_to_equivalence(g: Graph, m: Iterable[Edge]) -> EquivalenceRelation:
    """(v, w) related iff {v, w} is not cut; defined for complete graphs only."""
    if g.m != g.n * (g.n - 1) // 2:
        raise GraphError("equivalence view is only defined for complete graphs")
    m = _check_subset(g, m)
    if not is_multicut(g, m):
        multicut_to_decomposition(g, m)  # raises with a witness
    rep = list(range(g.n))
    for v in range(g.n):
        for w in range(v):
            if edge(v, w) not in m:
                rep[v] = min(rep[v], rep[w])
                break
    return EquivalenceRelation(tuple(rep))
