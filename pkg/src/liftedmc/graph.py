"""Simple undirected graphs and the structural queries used throughout.

Nodes are dense integers ``0..n-1``. Edges are normalized ``(u, v)`` tuples
with ``u < v`` and every graph keeps its edges in lexicographic order; that
order fixes the coordinates of every 01-vector in the package.

All enumerators here are exhaustive and exponential in the worst case. They
are meant for graphs with roughly a dozen nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


def edge(u: int, v: int) -> Edge:
    """Normalize an unordered pair."""
    if u == v:
        raise GraphError(f"self-loop at node {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative node count")
        seen = set()
        for u, v in self.edges:
            e = edge(u, v)
            if not (0 <= e[0] and e[1] < self.n):
                raise GraphError(f"edge {e} has an endpoint outside [0, {self.n})")
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @cached_property
    def index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nb) for nb in self.adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.index

    def nodes(self) -> range:
        return range(self.n)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


class Path(NamedTuple):
    nodes: tuple[int, ...]
    edges: frozenset[Edge]


def path_edges(nodes: Sequence[int]) -> frozenset[Edge]:
    return frozenset(edge(a, b) for a, b in zip(nodes, nodes[1:]))


def mask_of(nodes: Iterable[int]) -> int:
    m = 0
    for u in nodes:
        m |= 1 << u
    return m


def nodes_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def reach_mask(adj_mask: Sequence[int], start: int, allowed: int) -> int:
    """Nodes of ``allowed`` reachable from ``start`` through ``allowed``."""
    if not (allowed >> start) & 1:
        return 0
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adj_mask[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected_mask(g: Graph, mask: int) -> bool:
    """Is the subgraph induced by ``mask`` connected (empty counts as connected)."""
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    return reach_mask(g.adj_mask, start, mask) == mask


def is_connected(g: Graph) -> bool:
    return is_connected_mask(g, (1 << g.n) - 1)


def components(n: int, edges: Iterable[Edge]) -> list[int]:
    """Component label (smallest member) of every node of ``(range(n), edges)``."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return [find(u) for u in range(n)]


def subgraph(g: Graph, keep: Iterable[Edge]) -> Graph:
    return Graph(g.n, tuple(keep))


def shortest_path_tree(g: Graph, source: int, allowed: int | None = None) -> list[int | None]:
    """BFS parents from ``source``; neighbours are visited in increasing order."""
    parent: list[int | None] = [None] * g.n
    parent[source] = source
    queue = [source]
    for u in queue:
        for x in sorted(g.adj[u]):
            if parent[x] is None and (allowed is None or (allowed >> x) & 1):
                parent[x] = u
                queue.append(x)
    return parent


def bfs_path(g: Graph, v: int, w: int, allowed: int | None = None) -> list[int] | None:
    parent = shortest_path_tree(g, v, allowed)
    if parent[w] is None:
        return None
    out = [w]
    while out[-1] != v:
        out.append(parent[out[-1]])
    return out[::-1]


def enumerate_chordless_cycles(g: Graph) -> list[frozenset[Edge]]:
    """Edge sets of all chordless (induced) cycles, each exactly once.

    Cycles are grown as induced paths from their smallest node ``s``; the
    second node must be smaller than the last one, which fixes direction.
    """
    out: list[tuple[int, ...]] = []
    adj = g.adj

    def grow(path: list[int], inside: set[int]):
        s, last = path[0], path[-1]
        for x in sorted(adj[last]):
            if x <= s or x in inside:
                continue
            # x may touch only `last` and possibly `s` among the path nodes
            touches = adj[x] & inside
            if touches - {last, s}:
                continue
            if s in touches:
                if len(path) >= 2 and path[1] < x:
                    out.append(tuple(path + [x]))
                continue
            path.append(x)
            inside.add(x)
            grow(path, inside)
            inside.discard(x)
            path.pop()

    for s in range(g.n):
        for a in sorted(adj[s]):
            if a > s:
                grow([s, a], {s, a})
    cycles = [frozenset(edge(a, b) for a, b in zip(c, c[1:] + c[:1])) for c in out]
    cycles.sort(key=lambda c: (len(c), sorted(c)))
    return cycles


def enumerate_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All simple cycles as node sequences starting at their smallest node.

    Each cycle appears once (direction fixed by ``seq[1] < seq[-1]``).
    """
    out = []
    adj = g.adj

    def grow(path, inside):
        s, last = path[0], path[-1]
        for x in sorted(adj[last]):
            if x == s and len(path) >= 3 and path[1] < path[-1]:
                out.append(tuple(path))
            if x <= s or x in inside:
                continue
            path.append(x)
            inside.add(x)
            grow(path, inside)
            inside.discard(x)
            path.pop()

    for s in range(g.n):
        grow([s], {s})
    out.sort(key=lambda c: (len(c), c))
    return out


def cycle_edges(nodes: Sequence[int]) -> frozenset[Edge]:
    return frozenset(edge(a, b) for a, b in zip(nodes, list(nodes[1:]) + [nodes[0]]))


def enumerate_vw_paths(g: Graph, v: int, w: int) -> list[Path]:
    """All simple v-w paths, depth first with neighbours in increasing order."""
    if v == w:
        raise GraphError("v and w must be distinct")
    out: list[Path] = []
    adj = g.adj
    # prune branches that can no longer reach w
    stack = [v]
    on = {v}

    def rec():
        last = stack[-1]
        for x in sorted(adj[last]):
            if x in on:
                continue
            if x == w:
                nodes = tuple(stack) + (w,)
                out.append(Path(nodes, path_edges(nodes)))
                continue
            allowed = ((1 << g.n) - 1) & ~mask_of(on)
            if not (reach_mask(g.adj_mask, x, allowed) >> w) & 1:
                continue
            stack.append(x)
            on.add(x)
            rec()
            on.discard(x)
            stack.pop()

    rec()
    return out


def enumerate_vw_cuts(g: Graph, v: int, w: int) -> list[frozenset[Edge]]:
    """All inclusion-minimal v-w cuts.

    A minimal cut is exactly the set of edges crossing a bipartition
    ``(A, V \\ A)`` with ``v in A``, ``w not in A`` and both sides connected.
    """
    if v == w:
        raise GraphError("v and w must be distinct")
    if not is_connected(g):
        raise GraphError("minimal cuts are only enumerated on connected graphs")
    full = (1 << g.n) - 1
    others = [u for u in range(g.n) if u not in (v, w)]
    cuts = []
    for bits in range(1 << len(others)):
        a = 1 << v
        for i, u in enumerate(others):
            if (bits >> i) & 1:
                a |= 1 << u
        if is_connected_mask(g, a) and is_connected_mask(g, full & ~a):
            cuts.append(frozenset(e for e in g.edges if ((a >> e[0]) & 1) != ((a >> e[1]) & 1)))
    cuts.sort(key=lambda c: (len(c), sorted(c)))
    return cuts


def cut_vertices(g: Graph, v: int, w: int) -> frozenset[int]:
    """Nodes lying on every v-w path (v and w included)."""
    if v == w:
        raise GraphError("v and w must be distinct")
    if not is_connected(g):
        raise GraphError("cut vertices are only defined here for connected graphs")
    full = (1 << g.n) - 1
    out = {v, w}
    for u in range(g.n):
        if u in out:
            continue
        if not (reach_mask(g.adj_mask, v, full & ~(1 << u)) >> w) & 1:
            out.add(u)
    return frozenset(out)


def separates(g: Graph, v: int, w: int, nodes: Iterable[int]) -> bool:
    """Does every v-w path touch ``nodes`` (endpoints count)?"""
    blocked = mask_of(nodes)
    if (blocked >> v) & 1 or (blocked >> w) & 1:
        return True
    full = (1 << g.n) - 1
    return not (reach_mask(g.adj_mask, v, full & ~blocked) >> w) & 1


def contract_edge(g: Graph, e: Edge) -> tuple[Graph, list[int]]:
    """Merge the endpoints of ``e``; returns the new graph and old->new node map."""
    e = edge(*e)
    if e not in g.index:
        raise GraphError(f"edge {e} not in graph")
    u, v = e
    relabel = [x if x < v else (u if x == v else x - 1) for x in range(g.n)]
    new_edges = set()
    for a, b in g.edges:
        ra, rb = relabel[a], relabel[b]
        if ra != rb:
            new_edges.add(edge(ra, rb))
    return Graph(g.n - 1, tuple(new_edges)), relabel


def induced_edges(g: Graph, mask: int) -> list[Edge]:
    return [e for e in g.edges if (mask >> e[0]) & 1 and (mask >> e[1]) & 1]


def connected_subsets(g: Graph) -> list[int]:
    """Bitmasks of all nonempty node sets inducing a connected subgraph."""
    return [m for m in range(1, 1 << g.n) if is_connected_mask(g, m)]


def triangles_containing(g: Graph, e: Edge) -> list[int]:
    u, v = edge(*e)
    return sorted(g.adj[u] & g.adj[v])


def distances(g: Graph, source: int) -> list[float]:
    dist = [float("inf")] * g.n
    dist[source] = 0
    queue = [source]
    for u in queue:
        for x in g.adj[u]:
            if dist[x] == float("inf"):
                dist[x] = dist[u] + 1
                queue.append(x)
    return dist


@dataclass(frozen=True)
class LiftedPair:
    """A connected base graph and a supergraph on the same nodes."""

    base: Graph
    lifted: Graph

    def __post_init__(self):
        if self.base.n != self.lifted.n:
            raise GraphError("base and lifted graph must share the node set")
        missing = self.base.edge_set - self.lifted.edge_set
        if missing:
            raise GraphError(f"base edge {min(missing)} missing from the lifted graph")
        if not is_connected(self.base):
            raise GraphError("base graph must be connected")

    @classmethod
    def from_edges(cls, n: int, base: Iterable[Sequence[int]], extra: Iterable[Sequence[int]] = ()):
        base_edges = [edge(*e) for e in base]
        extra_edges = [edge(*e) for e in extra]
        return cls(Graph(n, tuple(base_edges)), Graph(n, tuple(set(base_edges) | set(extra_edges))))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.lifted.edges

    @cached_property
    def F(self) -> tuple[Edge, ...]:
        return tuple(e for e in self.lifted.edges if e not in self.base.index)

    @cached_property
    def base_positions(self) -> tuple[int, ...]:
        return tuple(self.lifted.index[e] for e in self.base.edges)

    @cached_property
    def F_positions(self) -> tuple[int, ...]:
        return tuple(self.lifted.index[e] for e in self.F)

    def is_base(self, e: Edge) -> bool:
        return edge(*e) in self.base.index

    def __repr__(self):
        return f"LiftedPair(n={self.n}, E={list(self.base.edges)}, F={list(self.F)})"


def all_pairs(n: int) -> Iterator[Edge]:
    return combinations(range(n), 2)
