"""Predicate-versus-oracle verification suites.

Every suite runs a theorem's executable predicate against the brute-force
facet oracle (or an independent enumeration) on one lifted pair and
collects disagreements. A suite passes when that list is empty.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .facets import (
    VwCutContext,
    check_box_lower,
    check_box_upper,
    check_cut_conditions,
    check_cycle_path_facet,
    check_single_edge_cut_facet,
    classify_zero_components,
    component_labeling,
    contracted_pair,
)
from .graph import LiftedPair, enumerate_vw_cuts
from .inequality import box_lower, box_upper, canonical_inequalities, cut_inequality, from_tag
from .lifting import (
    component_label_rows,
    dimension_witness,
    is_lifted_by_components,
    labeling_str,
    lifted_vertex_array,
    lifted_vertex_labels,
    satisfies_lifted_system,
)
from .polytope import affine_dimension, affine_rank_direct, face, face_indices, is_facet

SUITES = ("dimension", "lemma8", "cycles", "cuts-single", "cuts-necessary", "box")


@dataclass
class SuiteResult:
    suite: str
    checked: int = 0
    disagreements: list[dict] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def bump(self, key: str, by: int = 1):
        self.counts[key] = self.counts.get(key, 0) + by

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "checked": self.checked,
            "ok": self.ok,
            "counts": dict(sorted(self.counts.items())),
            "disagreements": self.disagreements,
        }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in seq]
    return obj


def suite_dimension(pair: LiftedPair) -> SuiteResult:
    res = SuiteResult("dimension")
    X = lifted_vertex_array(pair)
    d = len(pair.edges)
    dim = affine_dimension(X)
    res.checked = 1
    res.counts.update({"vertices": int(X.shape[0]), "edges": d, "dimension": dim})
    if dim != d:
        res.disagreements.append({"what": "dimension", "expected": d, "got": dim})
    wit = dimension_witness(pair)
    members = {tuple(r) for r in X.tolist()}
    outside = [labeling_str(w) for w in wit if tuple(w) not in members]
    if outside:
        res.disagreements.append({"what": "witness outside X", "labelings": outside})
    rank = affine_rank_direct(wit)
    res.counts["witness_rank"] = rank
    if len(wit) != d + 1 or rank != d:
        res.disagreements.append({"what": "witness not affinely independent", "rank": rank})
    return res


def suite_lemma8(pair: LiftedPair, max_edges: int = 16) -> SuiteResult:
    """Inequalities vs component semantics vs enumeration, over all of {0,1}^E'."""
    res = SuiteResult("lemma8")
    d = len(pair.edges)
    if d > max_edges:
        raise ValueError(f"lemma8 scan over 2^{d} labelings exceeds the {max_edges}-edge cap")
    members = {tuple(r) for r in lifted_vertex_array(pair).tolist()}
    for x in product((0, 1), repeat=d):
        a = satisfies_lifted_system(pair, x)
        b = is_lifted_by_components(pair, x)
        c = x in members
        res.checked += 1
        res.bump("feasible" if c else "infeasible")
        if not a == b == c:
            res.disagreements.append(
                {"labeling": labeling_str(x), "inequalities": a, "components": b, "enumeration": c}
            )
    return res


def suite_cycles(pair: LiftedPair) -> SuiteResult:
    res = SuiteResult("cycles")
    for tag, ineq in canonical_inequalities(pair):
        if tag.family not in ("cycle", "path"):
            continue
        pred = check_cycle_path_facet(pair, tag).facet
        oracle = is_facet(pair, ineq)
        res.checked += 1
        res.bump(f"{tag.family}_{'facet' if oracle else 'nonfacet'}")
        if pred != oracle:
            res.disagreements.append({"tag": str(tag), "predicate": pred, "oracle": oracle})
    return res


def _cut_contexts(pair: LiftedPair, single_only: bool):
    for f in pair.F:
        for c in enumerate_vw_cuts(pair.base, *f):
            if single_only and len(c) != 1:
                continue
            yield VwCutContext(pair, f, c)


def suite_cuts_single(pair: LiftedPair) -> SuiteResult:
    res = SuiteResult("cuts-single")
    for ctx in _cut_contexts(pair, single_only=True):
        v = check_single_edge_cut_facet(ctx)
        oracle = is_facet(pair, cut_inequality(pair, ctx.f, ctx.cut))
        res.checked += 1
        res.bump("facet" if oracle else "nonfacet")
        if ctx.V0_by_convention:
            res.bump("V0_by_convention")
        if v.facet != oracle:
            res.disagreements.append(
                {"f": ctx.f, "cut": sorted(ctx.cut), "predicate": v.facet, "oracle": oracle,
                 "conditions": v.conditions, "witnesses": _jsonable(v.witnesses)}
            )
    return res


def _mask_labelings(pair: LiftedPair, masks: list[int]) -> np.ndarray:
    """Rows: 0 on edges inside the node mask, 1 elsewhere."""
    M = np.array(masks, dtype=np.int64)[:, None]
    U = np.array([u for u, _ in pair.edges], dtype=np.int64)
    V = np.array([v for _, v in pair.edges], dtype=np.int64)
    inside = ((M >> U) & 1) & ((M >> V) & 1)
    return (1 - inside).astype(np.uint8)


def check_lemma12(ctx: VwCutContext, S: np.ndarray, L: np.ndarray | None = None) -> list[dict]:
    """Structure of the cut face; returns violations (empty when everything holds).

    (a) On every face vertex, each maximal 0-component of G is (vw,C)-connected,
    at most one is proper, and one is proper exactly when x_vw = 0. A maximal
    component crosses C iff it holds a 0-labelled cut edge, so it suffices to
    count those edges per row.
    (b) Every (vw,C)-connected component, as a labeling, lies in the face.

    ``L`` holds per-row component labels of ``S`` and is computed when omitted.
    """
    pair = ctx.pair
    out = []
    idx = pair.lifted.index
    v, w = ctx.v, ctx.w
    if S.shape[0]:
        if L is None:
            L = component_label_rows(pair, S)
        cut = sorted(ctx.cut)
        Z = np.stack([S[:, idx[e]] == 0 for e in cut], axis=1)
        k = Z.sum(axis=1)
        joined = L[:, v] == L[:, w]
        xf = S[:, idx[ctx.f]]
        ok0 = (k == 0) & ~joined & (xf == 1)
        in_vw = np.zeros(S.shape[0], dtype=bool)
        for j, (a, _) in enumerate(cut):
            in_vw |= Z[:, j] & (L[:, a] == L[:, v])
        ok1 = (k == 1) & in_vw & joined & (xf == 0)
        for i in np.flatnonzero(~(ok0 | ok1))[:5]:
            comps = classify_zero_components(ctx, S[i].tolist())
            out.append({"labeling": labeling_str(S[i].tolist()), "kinds": [kd for _, kd in comps]})
    comps = ctx.components
    if comps:
        Y = _mask_labelings(pair, [c.mask for c in comps])
        a, rhs = cut_inequality(pair, ctx.f, ctx.cut).integral()
        tight = Y.astype(np.int64) @ np.array(a, dtype=np.int64) == rhs
        LY = component_label_rows(pair, Y)
        U = [u for u, _ in pair.edges]
        V = [x for _, x in pair.edges]
        lifted_ok = np.all((LY[:, U] != LY[:, V]) == (Y == 1), axis=1)
        for j in np.flatnonzero(~(tight & lifted_ok))[:5]:
            c = comps[j]
            out.append({"component": sorted(c.nodes), "kind": c.kind, "labeling": labeling_str(Y[j].tolist())})
    return out


def suite_cuts_necessary(pair: LiftedPair, lemma12: bool = True) -> SuiteResult:
    """Soundness of C1-C5: any failure must coincide with an oracle non-facet."""
    res = SuiteResult("cuts-necessary")
    for ctx in _cut_contexts(pair, single_only=False):
        rows = face_indices(pair, cut_inequality(pair, ctx.f, ctx.cut))
        S = lifted_vertex_array(pair)[rows]
        oracle = affine_dimension(S) == len(pair.edges) - 1
        v = check_cut_conditions(ctx)
        res.checked += 1
        res.bump("facet" if oracle else "nonfacet")
        for name in v.violated:
            res.bump(f"{name}_violated")
        if v.violated and oracle:
            res.disagreements.append(
                {"f": ctx.f, "cut": sorted(ctx.cut), "violated": v.violated, "witnesses": _jsonable(v.witnesses)}
            )
        if lemma12:
            bad = check_lemma12(ctx, S, lifted_vertex_labels(pair)[rows])
            if bad:
                res.disagreements.append({"f": ctx.f, "cut": sorted(ctx.cut), "lemma12": bad[:5]})
    return res


def suite_box(pair: LiftedPair) -> SuiteResult:
    res = SuiteResult("box")
    d = len(pair.edges)
    for e in pair.edges:
        up = check_box_upper(pair, e).facet
        oracle_up = is_facet(pair, box_upper(pair, e))
        res.checked += 1
        if up != oracle_up:
            res.disagreements.append({"tag": f"box_upper{e}", "predicate": up, "oracle": oracle_up})

        lo = check_box_lower(pair, e)
        S = face(pair, box_lower(pair, e))
        dim = affine_dimension(S)
        oracle_lo = dim == d - 1
        res.checked += 1
        if pair.is_base(e):
            if lo.facet != oracle_lo:
                res.disagreements.append({"tag": f"box_lower{e}", "predicate": lo.facet, "oracle": oracle_lo})
            contracted = contracted_pair(pair, e)
            cdim = affine_dimension(lifted_vertex_array(contracted))
            res.bump("contractions")
            if cdim != dim:
                res.disagreements.append({"tag": f"box_lower{e}", "face_dim": dim, "contracted_dim": cdim})
        else:
            res.bump("lifted_lower_inconclusive" if lo.facet is None else "lifted_lower_nonfacet")
            if lo.facet is None and oracle_lo:
                res.bump("lifted_lower_facet")
            if lo.facet is False and oracle_lo:
                res.disagreements.append(
                    {"tag": f"box_lower{e}", "violated": lo.violated, "oracle": True,
                     "witnesses": _jsonable(lo.witnesses)}
                )
    return res


_RUNNERS = {
    "dimension": suite_dimension,
    "lemma8": suite_lemma8,
    "cycles": suite_cycles,
    "cuts-single": suite_cuts_single,
    "cuts-necessary": suite_cuts_necessary,
    "box": suite_box,
}


def run_suite(name: str, pair: LiftedPair) -> SuiteResult:
    if name not in _RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _RUNNERS[name](pair)


def designated_cut_report(pair: LiftedPair, f, cut) -> dict:
    """Conditions and oracle verdict for one named (f, C), as used by the fig7 fixtures."""
    ctx = VwCutContext(pair, f, cut)
    v = check_cut_conditions(ctx)
    ineq = cut_inequality(pair, ctx.f, ctx.cut)
    oracle = is_facet(pair, ineq)
    return {
        "f": list(ctx.f),
        "cut": [list(e) for e in sorted(ctx.cut)],
        "oracle_facet": oracle,
        "violated_conditions": v.violated,
        "witnesses": _jsonable(v.witnesses),
    }
