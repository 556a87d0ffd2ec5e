"""Named instances and seeded generators.

Node ids follow the drawings left to right where a drawing exists; the
mapping for each fig7 instance is spelled out in ``names`` so that
tests can talk about ``f1`` or ``e`` instead of raw pairs.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from itertools import combinations

from .graph import Edge, Graph, GraphError, LiftedPair, edge, is_connected


@dataclass(frozen=True)
class Fixture:
    name: str
    pair: LiftedPair
    f: Edge | None = None
    cut: tuple[Edge, ...] = ()
    names: dict = field(default_factory=dict, compare=False, hash=False)
    condition: str | None = None  # the condition the caption reports as failing
    costs: tuple[int, ...] | None = None


def _pair(n: int, base, extra=()) -> LiftedPair:
    return LiftedPair.from_edges(n, base, extra)


# -- plain families -------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph(n, tuple(edge(i, (i + 1) % n) for i in range(n)))


def grid_graph(rows: int, cols: int) -> Graph:
    """Row-major ids: node (x, y) with column x and row y has id y * cols + x."""
    es = []
    for y in range(rows):
        for x in range(cols):
            u = y * cols + x
            if x + 1 < cols:
                es.append((u, u + 1))
            if y + 1 < rows:
                es.append((u, u + cols))
    return Graph(rows * cols, tuple(es))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def lift_random(base: Graph, prob: float, rng: random.Random, max_edges: int | None = None) -> LiftedPair:
    extra = [e for e in combinations(range(base.n), 2) if e not in base.edge_set and rng.random() < prob]
    if max_edges is not None:
        extra = extra[: max(0, max_edges - base.m)]
    return LiftedPair(base, Graph(base.n, base.edges + tuple(extra)))


def random_pair(n: int, p: float, lift: float, seed: int, max_edges: int | None = None,
                max_tries: int = 1000) -> LiftedPair:
    """G(n, p) base resampled until connected, then each non-base pair lifted with probability ``lift``."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        es = tuple(e for e in combinations(range(n), 2) if rng.random() < p)
        base = Graph(n, es)
        if is_connected(base) and (max_edges is None or base.m <= max_edges):
            return lift_random(base, lift, rng, max_edges)
    raise GraphError(f"no connected G({n}, {p}) sample within {max_tries} tries")


def random_fixture_pairs(count: int = 50, seed: int = 0, max_nodes: int = 6, max_edges: int = 12) -> list[LiftedPair]:
    """Seeded random pairs with n in [3, max_nodes] and at most ``max_edges`` lifted edges."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, max_nodes)
        p = rng.choice([0.4, 0.5, 0.6, 0.8])
        lift = rng.choice([0.3, 0.5, 0.7])
        out.append(random_pair(n, p, lift, rng.randrange(2 ** 32), max_edges=max_edges))
    return out


# -- generator spec strings ------------------------------------------------------

_FAMILY = re.compile(r"^\s*(\w+)\s*(?:\(([^)]*)\))?\s*(.*)$")


def parse_gen_spec(text: str, seed: int | None = None) -> LiftedPair:
    """Build a pair from e.g. ``path(3) +0,2``, ``grid(2,3) lift=0.3 seed=1``
    or ``random n=5 p=0.6 lift=0.5 seed=7``.

    ``+u,v`` adds a lifted edge; ``lift=q`` lifts every non-base pair with
    probability q. ``complete(n)`` without extras gives base = lifted.
    """
    m = _FAMILY.match(text)
    if not m:
        raise GraphError(f"cannot parse generator spec {text!r}")
    family, args, rest = m.group(1), m.group(2), m.group(3)
    pos = [a.strip() for a in args.split(",")] if args else []
    kw: dict[str, str] = {}
    extra: list[Edge] = []
    for tok in rest.split():
        if tok.startswith("+"):
            a, _, b = tok[1:].partition(",")
            extra.append(edge(int(a), int(b)))
        elif "=" in tok:
            k, _, v = tok.partition("=")
            kw[k] = v
        else:
            raise GraphError(f"unexpected token {tok!r} in generator spec")
    if seed is not None and "seed" not in kw:
        kw["seed"] = str(seed)
    try:
        if family == "random":
            keys = ["n", "p", "lift", "seed"]
            vals = dict(zip(keys, pos))
            vals.update(kw)
            missing = [k for k in ("n", "p") if k not in vals]
            if missing:
                raise GraphError(f"random spec needs {missing}")
            pair = random_pair(int(vals["n"]), float(vals["p"]), float(vals.get("lift", 0)),
                               int(vals.get("seed", 0)))
            if extra:
                pair = LiftedPair(pair.base, Graph(pair.n, pair.lifted.edges + tuple(extra)))
            return pair
        ints = [int(a) for a in pos]
        if family == "path":
            base = path_graph(*ints)
        elif family == "cycle":
            base = cycle_graph(*ints)
        elif family == "grid":
            base = grid_graph(*ints)
        elif family == "complete":
            base = complete_graph(*ints)
        else:
            raise GraphError(f"unknown family {family!r}")
    except (TypeError, ValueError) as exc:
        if isinstance(exc, GraphError):
            raise
        raise GraphError(f"bad arguments in generator spec {text!r}: {exc}") from None
    if "lift" in kw:
        pair = lift_random(base, float(kw["lift"]), random.Random(int(kw.get("seed", 0))))
        base, lifted_edges = pair.base, pair.lifted.edges
    else:
        lifted_edges = base.edges
    return LiftedPair(base, Graph(base.n, tuple(lifted_edges) + tuple(extra)))


# -- named instances ---------------------------------------------------------------


def fig3() -> Fixture:
    """Path b - a - c lifted to a triangle: a=0, b=1, c=2; e1=ab, e2=ac, f=bc."""
    pair = _pair(3, [(0, 1), (0, 2)], [(1, 2)])
    return Fixture("fig3", pair, f=(1, 2), names={"e1": (0, 1), "e2": (0, 2), "f": (1, 2)})


def k3() -> Fixture:
    return Fixture("k3", _pair(3, [(0, 1), (0, 2), (1, 2)]), names={"e1": (0, 1), "e2": (0, 2), "f": (1, 2)})


FIG6_COSTS = (-1, -1, 3)


def fig6() -> Fixture:
    """The fig3 pair with costs (e1, e2, f) = (-1, -1, 3)."""
    fx = fig3()
    return Fixture("fig6", fx.pair, names=fx.names, costs=FIG6_COSTS)


def fig6_multicut() -> Fixture:
    """Same costs with f promoted to a base edge: the plain multicut problem on K3."""
    fx = k3()
    return Fixture("fig6_multicut", fx.pair, names=fx.names, costs=FIG6_COSTS)


def fig4a() -> Fixture:
    pair = _pair(4, [(0, 1), (1, 2), (2, 3)], [(0, 2), (1, 3), (0, 3)])
    return Fixture("fig4a", pair, names={"f1": (0, 2), "f2": (1, 3), "f3": (0, 3)})


def fig4b() -> Fixture:
    pair = LiftedPair(cycle_graph(6), Graph(6, cycle_graph(6).edges + ((0, 2), (3, 5), (2, 5))))
    return Fixture("fig4b", pair, names={"f1": (0, 2), "f2": (3, 5), "f3": (2, 5)})


def c4_k4() -> Fixture:
    return Fixture("c4_k4", LiftedPair(cycle_graph(4), complete_graph(4)))


def grid23(seed: int = 3) -> Fixture:
    base = grid_graph(2, 3)
    rng = random.Random(seed)
    pool = [e for e in combinations(range(6), 2) if e not in base.edge_set]
    extra = sorted(rng.sample(pool, 3))
    return Fixture("grid23", LiftedPair(base, Graph(6, base.edges + tuple(extra))))


def fig1() -> tuple[Graph, tuple[tuple[int, ...], ...]]:
    """The 3x4 grid and its three-block decomposition; seven edges are cut."""
    g = grid_graph(3, 4)

    def ids(pts):
        return tuple(sorted(y * 4 + x for x, y in pts))

    blocks = (
        ids([(0, 2), (1, 2), (2, 2), (1, 1), (2, 1)]),
        ids([(0, 0), (0, 1), (1, 0)]),
        ids([(2, 0), (3, 0), (3, 1), (3, 2)]),
    )
    return g, blocks


def _fig7(name, n, base, extra, f, cut, names, condition) -> Fixture:
    return Fixture(name, _pair(n, base, extra), f=edge(*f), cut=tuple(sorted(edge(*c) for c in cut)),
                   names=names, condition=condition)


def fig7a() -> Fixture:
    # v=0 s=1 w=2 t=3
    return _fig7("fig7a", 4, [(0, 1), (1, 2), (1, 3), (3, 2)], [(0, 2)], (0, 2), [(1, 2), (1, 3)],
                 {"v": 0, "s": 1, "w": 2, "t": 3, "e": (1, 3), "e_prime": (1, 2)}, "C1")


def fig7b() -> Fixture:
    # v=0 r=1 n2=2 w=3
    return _fig7("fig7b", 4, [(0, 1), (1, 2), (2, 3)], [(1, 3), (0, 3)], (0, 3), [(1, 2)],
                 {"f_prime": (1, 3)}, "C2")


def fig7c() -> Fixture:
    # v=0 s=1 r=2 w=3
    return _fig7("fig7c", 4, [(0, 1), (0, 2), (1, 3), (2, 3)], [(1, 2), (0, 3)], (0, 3), [(0, 1), (2, 3)],
                 {"f_prime": (1, 2)}, "C2")


def fig7d() -> Fixture:
    # v=0 b=1 c=2 w=3 p=4
    return _fig7("fig7d", 5, [(0, 1), (1, 2), (2, 4), (2, 3), (0, 4)], [(0, 3), (1, 3)], (0, 3),
                 [(1, 2), (2, 4)], {"f_prime": (1, 3)}, "C2")


def fig7e() -> Fixture:
    # v=0, top row 1..6, bottom row 7..12, w=13
    base = [(0, 1), (0, 6), (13, 7), (13, 12), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
            (7, 8), (8, 9), (9, 10), (10, 11), (11, 12)]
    cut = [(1, 7), (1, 8), (2, 7), (3, 9), (4, 10), (5, 12), (6, 11), (6, 12)]
    return _fig7("fig7e", 14, base + cut, [(0, 13), (3, 10), (4, 9)], (0, 13), cut,
                 {"f1": (3, 10), "f2": (4, 9)}, "C2")


def fig7f() -> Fixture:
    # path a=0 b=1 c=2 d=3; v=a, w=c
    return _fig7("fig7f", 4, [(0, 1), (1, 2), (2, 3)], [(0, 2), (0, 3), (1, 3)], (0, 2), [(1, 2)],
                 {"f_prime": (0, 3), "f_second": (1, 3)}, "C3")


def fig7g() -> Fixture:
    # 0, v=1, 2, 3, 4, w=5
    return _fig7("fig7g", 6, [(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5)],
                 [(1, 5), (0, 5), (0, 3), (0, 4)], (1, 5), [(2, 3), (2, 4)],
                 {"f_prime": (0, 5), "f1": (0, 3), "f2": (0, 4)}, "C3")


def fig7h() -> Fixture:
    # A=0(v) B=1 C=2 D=3 E=4 F=5 G=6 H=7 I=8 J=9(w)
    base = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 8), (1, 5), (5, 6), (6, 7), (7, 8), (8, 9)]
    return _fig7("fig7h", 10, base, [(0, 9), (1, 7), (2, 7), (2, 8)], (0, 9), [(3, 4), (5, 6)],
                 {"f1": (1, 7), "f2": (2, 7), "f3": (2, 8), "path": (1, 7, 2, 8)}, "C4")


def fig7i() -> Fixture:
    # v=0 n1=1 n2=2 n3=3 n4=4 w=5
    base = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (2, 5)]
    return _fig7("fig7i", 6, base, [(0, 5), (1, 3), (1, 5), (1, 4)], (0, 5), [(0, 3), (2, 5)],
                 {"e": (0, 3), "f1": (1, 3), "f2": (1, 5), "f_prime": (1, 4), "path": (0, 3, 1, 5)}, "C4")


def fig7j() -> Fixture:
    # A=0(v) B=1 C=2 D=3 E=4 F=5 I=6 J=7(w) K=8 L=9 M=10 N=11
    base = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 8), (8, 9), (9, 10), (10, 11), (11, 6)]
    return _fig7("fig7j", 12, base, [(0, 7), (3, 11), (3, 10), (2, 10), (2, 11)], (0, 7), [(4, 5), (8, 9)],
                 {"f1": (3, 11), "f2": (3, 10), "f3": (2, 10), "f4": (2, 11)}, "C5")


def fig7k() -> Fixture:
    base = [(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (2, 5)]
    return _fig7("fig7k", 6, base, [(0, 5), (0, 4), (1, 3), (1, 4)], (0, 5), [(0, 3), (2, 5)],
                 {"e": (0, 3), "f1": (1, 3), "f2": (1, 4), "f3": (0, 4)}, "C5")


FIG7 = {fx.__name__: fx for fx in (fig7a, fig7b, fig7c, fig7d, fig7e, fig7f, fig7g, fig7h, fig7i, fig7j, fig7k)}

NAMED = {
    "fig3": fig3,
    "k3": k3,
    "fig6": fig6,
    "fig6_multicut": fig6_multicut,
    "fig4a": fig4a,
    "fig4b": fig4b,
    "c4_k4": c4_k4,
    "grid23": grid23,
    **FIG7,
}


def named_fixture(name: str) -> Fixture:
    if name not in NAMED:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(sorted(NAMED))}")
    return NAMED[name]()


def fixture_pairs(max_edges: int | None = None, random_count: int = 50, seed: int = 0) -> list[tuple[str, LiftedPair]]:
    """Named fixtures plus seeded random pairs, optionally capped by |E'|."""
    out = [(name, ctor().pair) for name, ctor in NAMED.items() if name not in ("fig6", "fig6_multicut")]
    out += [(f"random{i}", p) for i, p in enumerate(random_fixture_pairs(random_count, seed))]
    if max_edges is not None:
        out = [(n, p) for n, p in out if len(p.edges) <= max_edges]
    return out
