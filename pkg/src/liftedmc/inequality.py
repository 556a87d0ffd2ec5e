"""Linear inequalities over the edges of the lifted graph.

Every inequality is stored as ``a . x <= rhs`` with exact rational
coefficients indexed by the canonical edge order of ``E'``. The five
canonical families (cycle, path, cut, upper box, lower box) carry a
:class:`Tag` naming the object that generated them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, NamedTuple, Sequence

from .graph import Edge, LiftedPair, edge, enumerate_chordless_cycles, enumerate_vw_cuts, enumerate_vw_paths

FAMILIES = ("cycle", "path", "cut", "box_upper", "box_lower")


class Tag(NamedTuple):
    family: str
    edge: Edge
    support: tuple[Edge, ...] = ()

    def __str__(self):
        e = f"{self.edge[0]},{self.edge[1]}"
        if self.family in ("box_upper", "box_lower"):
            return f"{self.family}({e})"
        sup = ";".join(f"{u},{v}" for u, v in self.support)
        return f"{self.family}({e}|{sup})"

    @classmethod
    def parse(cls, text: str) -> "Tag":
        text = text.strip()
        family, _, rest = text.partition("(")
        if family not in FAMILIES or not rest.endswith(")"):
            raise ValueError(f"malformed tag {text!r}")
        body = rest[:-1]
        head, _, sup = body.partition("|")
        e = _parse_pair(head)
        support = tuple(sorted(_parse_pair(s) for s in sup.split(";") if s.strip()))
        if family in ("cycle", "path", "cut") and not support:
            raise ValueError(f"tag {text!r} needs a supporting edge set")
        return cls(family, e, support)


def _parse_pair(text: str) -> Edge:
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 2:
        raise ValueError(f"malformed edge {text!r}")
    return edge(int(parts[0]), int(parts[1]))


def _frac(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class LinearInequality:
    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    tag: Tag | None = None

    def __post_init__(self):
        coeffs = tuple(_frac(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "rhs", _frac(self.rhs))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def lhs(self, x: Sequence) -> Fraction:
        return sum((c * xi for c, xi in zip(self.coeffs, x) if c), Fraction(0))

    def violation(self, x: Sequence) -> Fraction:
        """``a.x - rhs``; positive means violated."""
        return self.lhs(x) - self.rhs

    def satisfied(self, x: Sequence) -> bool:
        return self.violation(x) <= 0

    def tight(self, x: Sequence) -> bool:
        return self.violation(x) == 0

    def integral(self) -> tuple[list[int], int]:
        """Coefficients and rhs scaled to integers by the lcm of denominators."""
        scale = lcm(*(c.denominator for c in self.coeffs), self.rhs.denominator)
        return [int(c * scale) for c in self.coeffs], int(self.rhs * scale)

    def to_json(self, edges: Sequence[Edge]) -> dict:
        return {
            "coeffs": {f"{u},{v}": str(c) for (u, v), c in zip(edges, self.coeffs) if c},
            "rhs": str(self.rhs),
            "tag": str(self.tag) if self.tag else "",
        }

    @classmethod
    def from_json(cls, data: dict, edges: Sequence[Edge]) -> "LinearInequality":
        index = {e: i for i, e in enumerate(edges)}
        coeffs = [Fraction(0)] * len(edges)
        for key, val in data.get("coeffs", {}).items():
            e = _parse_pair(key)
            if e not in index:
                raise ValueError(f"coefficient on {e}, which is not an edge of the lifted graph")
            coeffs[index[e]] = Fraction(str(val))
        tag = Tag.parse(data["tag"]) if data.get("tag") else None
        return cls(tuple(coeffs), Fraction(str(data.get("rhs", 0))), tag)


def _vector(pair: LiftedPair, terms: Iterable[tuple[Edge, int]]) -> list[Fraction]:
    coeffs = [Fraction(0)] * len(pair.edges)
    for e, c in terms:
        coeffs[pair.lifted.index[edge(*e)]] += c
    return coeffs


def cycle_inequality(pair: LiftedPair, cycle: Iterable[Edge], e: Edge) -> LinearInequality:
    """x_e <= sum of x over the rest of the cycle."""
    cycle = sorted(edge(*c) for c in cycle)
    e = edge(*e)
    terms = [(e, 1)] + [(c, -1) for c in cycle if c != e]
    return LinearInequality(tuple(_vector(pair, terms)), Fraction(0), Tag("cycle", e, tuple(cycle)))


def path_inequality(pair: LiftedPair, f: Edge, path: Iterable[Edge]) -> LinearInequality:
    """x_f <= sum of x over a base path joining the ends of f."""
    path = sorted(edge(*p) for p in path)
    f = edge(*f)
    terms = [(f, 1)] + [(p, -1) for p in path]
    return LinearInequality(tuple(_vector(pair, terms)), Fraction(0), Tag("path", f, tuple(path)))


def cut_inequality(pair: LiftedPair, f: Edge, cut: Iterable[Edge]) -> LinearInequality:
    """1 - x_f <= sum over the cut of (1 - x_e), i.e. -x_f + sum x_e <= |C| - 1."""
    cut = sorted(edge(*c) for c in cut)
    f = edge(*f)
    terms = [(f, -1)] + [(c, 1) for c in cut]
    return LinearInequality(tuple(_vector(pair, terms)), Fraction(len(cut) - 1), Tag("cut", f, tuple(cut)))


def box_upper(pair: LiftedPair, e: Edge) -> LinearInequality:
    e = edge(*e)
    return LinearInequality(tuple(_vector(pair, [(e, 1)])), Fraction(1), Tag("box_upper", e))


def box_lower(pair: LiftedPair, e: Edge) -> LinearInequality:
    e = edge(*e)
    return LinearInequality(tuple(_vector(pair, [(e, -1)])), Fraction(0), Tag("box_lower", e))


def from_tag(pair: LiftedPair, tag: Tag) -> LinearInequality:
    if tag.family == "cycle":
        return cycle_inequality(pair, tag.support, tag.edge)
    if tag.family == "path":
        return path_inequality(pair, tag.edge, tag.support)
    if tag.family == "cut":
        return cut_inequality(pair, tag.edge, tag.support)
    if tag.family == "box_upper":
        return box_upper(pair, tag.edge)
    if tag.family == "box_lower":
        return box_lower(pair, tag.edge)
    raise ValueError(f"unknown family {tag.family!r}")


@lru_cache(maxsize=256)
def lifted_system(pair: LiftedPair) -> tuple[LinearInequality, ...]:
    """Cycle, path and cut inequalities describing the lifted multicuts.

    Cycles are restricted to chordless cycles of the base graph.
    """
    out = []
    for c in enumerate_chordless_cycles(pair.base):
        for e in sorted(c):
            out.append(cycle_inequality(pair, c, e))
    for f in pair.F:
        for p in enumerate_vw_paths(pair.base, *f):
            out.append(path_inequality(pair, f, p.edges))
    for f in pair.F:
        for c in enumerate_vw_cuts(pair.base, *f):
            out.append(cut_inequality(pair, f, c))
    return tuple(out)


def canonical_inequalities(pair: LiftedPair) -> list[tuple[Tag, LinearInequality]]:
    """The lifted system plus both box bounds for every edge, tagged."""
    out = [(ineq.tag, ineq) for ineq in lifted_system(pair)]
    for e in pair.edges:
        out.append((Tag("box_upper", e), box_upper(pair, e)))
    for e in pair.edges:
        out.append((Tag("box_lower", e), box_lower(pair, e)))
    return out
