"""Acceptance criteria 1-10, one PASS/FAIL line each.

The heavy sweeps run once per module and are shared between criteria.
Expect a few minutes in total, dominated by the 14-node fig7e pair.
"""

import random
import time
from itertools import product

import pytest

from liftedmc.facets import contracted_pair
from liftedmc.fixtures import (
    FIG6_COSTS,
    FIG7,
    c4_k4,
    complete_graph,
    fig3,
    fig6,
    fig6_multicut,
    fixture_pairs,
    grid23,
    k3,
    random_fixture_pairs,
    random_pair,
)
from liftedmc.inequality import box_lower
from liftedmc.lifting import enumerate_lifted_multicuts, labeling_str, lifted_vertex_array
from liftedmc.partitions import enumerate_multicuts, subset_to_bits
from liftedmc.polytope import affine_dimension, face
from liftedmc.solver import separate, solve_branch_and_bound, solve_exact, solve_greedy
from liftedmc.verify import designated_cut_report, suite_cuts_necessary, suite_lemma8, run_suite


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print(f"\n[acceptance] criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


@pytest.fixture(scope="module")
def all_pairs():
    return fixture_pairs()


@pytest.fixture(scope="module")
def necessary_sweep(all_pairs):
    return {name: suite_cuts_necessary(pair) for name, pair in all_pairs}


def sweep(suite, pairs):
    out = {}
    for name, pair in pairs:
        out[name] = run_suite(suite, pair)
    return out


def summarise(results):
    checked = sum(r.checked for r in results.values())
    bad = {name: r.disagreements for name, r in results.items() if r.disagreements}
    return checked, bad


def test_criterion_01_figure_counts(report):
    t0 = time.perf_counter()
    mc = enumerate_multicuts(k3().pair.lifted)
    pair = fig3().pair
    lifted = [labeling_str(x) for x in enumerate_lifted_multicuts(pair)]
    # fig3's lifted graph is K3, so multicuts of G' are comparable edge for edge
    all_g2 = {subset_to_bits(pair.lifted, m) for m in enumerate_multicuts(pair.lifted)}
    secs = time.perf_counter() - t0
    ok = (len(mc) == 5 and lifted == ["000", "011", "101", "111"]
          and set(lifted) < all_g2 and secs < 1.0)
    assert report(1, ok, f"|multicuts(K3)|={len(mc)} lifted={lifted} strict={set(lifted) < all_g2} {secs:.3f}s")


def test_criterion_02_full_dimension(report):
    t0 = time.perf_counter()
    pairs = [fig3().pair, c4_k4().pair, grid23().pair] + random_fixture_pairs(50, seed=0)
    assert all(p.n <= 6 and len(p.edges) <= 12 for p in pairs[3:])
    bad = [(i, len(p.edges), affine_dimension(lifted_vertex_array(p))) for i, p in enumerate(pairs)
           if affine_dimension(lifted_vertex_array(p)) != len(p.edges)]
    secs = time.perf_counter() - t0
    ok = not bad and secs < 60
    assert report(2, ok, f"{len(pairs)} pairs, dim = |E'| on all; mismatches={bad} {secs:.1f}s")


def test_criterion_03_lemma8(report, all_pairs):
    t0 = time.perf_counter()
    pairs = [(n, p) for n, p in all_pairs if len(p.edges) <= 14]
    res = {n: suite_lemma8(p, max_edges=14) for n, p in pairs}
    checked, bad = summarise(res)
    secs = time.perf_counter() - t0
    ok = not bad and secs < 120
    assert report(3, ok, f"{len(pairs)} pairs, {checked} labelings, disagreements={len(bad)} {secs:.1f}s")


def test_criterion_04_cycles_and_paths(report, all_pairs):
    checked, bad = summarise(sweep("cycles", all_pairs))
    assert report(4, not bad and checked > 0, f"{checked} cycle/path inequalities, disagreements={bad}")


def test_criterion_05_single_edge_cuts(report, all_pairs):
    checked, bad = summarise(sweep("cuts-single", all_pairs))
    assert report(5, not bad and checked > 0, f"{checked} single-edge cuts, disagreements={bad}")


def test_criterion_06_fig7_and_soundness(report, necessary_sweep):
    lines, ok = [], True
    for name, ctor in FIG7.items():
        fx = ctor()
        rep = designated_cut_report(fx.pair, fx.f, fx.cut)
        wit = rep["witnesses"].get(fx.condition)
        good = rep["oracle_facet"] is False and fx.condition in rep["violated_conditions"] and bool(wit)
        ok &= good
        lines.append(f"{name}:{fx.condition}{'' if good else '!'}")
    unsound = {n: [d for d in r.disagreements if "violated" in d] for n, r in necessary_sweep.items()}
    unsound = {n: d for n, d in unsound.items() if d}
    checked = sum(r.checked for r in necessary_sweep.values())
    ok &= not unsound
    assert report(6, ok, f"{' '.join(lines)}; {checked} cuts swept, unsound={unsound}")


def test_criterion_06_witnesses_match_captions():
    checks = {
        "fig7e": ("C2", lambda w: sorted(map(tuple, w["F"])) == [(3, 10), (4, 9)]),
        "fig7j": ("C5", lambda w: sorted(map(tuple, w["edges"])) == [(2, 10), (2, 11), (3, 10), (3, 11)]),
        "fig7a": ("C1", lambda w: tuple(w["edge"]) == (1, 3)),
        "fig7h": ("C4", lambda w: list(w["path"]) == [1, 7, 2, 8]),
    }
    for name, (cond, pred) in checks.items():
        fx = FIG7[name]()
        rep = designated_cut_report(fx.pair, fx.f, fx.cut)
        assert pred(rep["witnesses"][cond]), (name, rep["witnesses"][cond])


def test_criterion_07_box(report, all_pairs):
    checked, bad = summarise(sweep("box", all_pairs))
    contractions = 0
    mism = []
    for i, pair in enumerate(random_fixture_pairs(20, seed=7)):
        for e in pair.base.edges:
            lhs = affine_dimension(face(pair, box_lower(pair, e)))
            rhs = affine_dimension(lifted_vertex_array(contracted_pair(pair, e)))
            contractions += 1
            if lhs != rhs:
                mism.append((i, e, lhs, rhs))
    ok = not bad and not mism
    assert report(7, ok, f"{checked} box inequalities, disagreements={len(bad)}; "
                         f"contraction identity on 20 instances / {contractions} edges, mismatches={mism}")


def test_criterion_08_solvers(report):
    ex = solve_exact(fig6().pair, FIG6_COSTS)
    mc = solve_exact(fig6_multicut().pair, FIG6_COSTS)
    fig_ok = (labeling_str(ex.labeling), ex.objective, labeling_str(mc.labeling), mc.objective) == ("000", 0, "110", -2)
    rng = random.Random(2024)
    mismatch, greedy_better, gaps = [], [], 0
    for i in range(100):
        pair = random_pair(rng.randint(2, 6), rng.choice([0.4, 0.6, 0.8]), rng.choice([0.2, 0.5]), seed=rng.randrange(10**6))
        costs = [rng.randint(-5, 5) for _ in pair.edges]
        a, b, g = solve_exact(pair, costs), solve_branch_and_bound(pair, costs), solve_greedy(pair, costs)
        if (a.objective, a.labeling) != (b.objective, b.labeling):
            mismatch.append(i)
        if g.objective < a.objective:
            greedy_better.append(i)
        gaps += g.objective > a.objective
    ok = fig_ok and not mismatch and not greedy_better
    assert report(8, ok, f"fig6 000/0 and 110/-2: {fig_ok}; bnb mismatches={mismatch}; "
                         f"greedy better={greedy_better}; greedy gaps={gaps}/100")


def test_criterion_09_lemma12(report, necessary_sweep):
    viol = {n: [d for d in r.disagreements if "lemma12" in d] for n, r in necessary_sweep.items()}
    viol = {n: d for n, d in viol.items() if d}
    faces = sum(r.checked for r in necessary_sweep.values())
    assert report(9, not viol, f"{faces} cut faces, violations={viol}")


def test_criterion_10_separation(report, all_pairs):
    t0 = time.perf_counter()
    pairs = [(n, p) for n, p in all_pairs if len(p.edges) <= 12]
    points, bad = 0, []
    for name, pair in pairs:
        feasible = set(enumerate_lifted_multicuts(pair))
        for x in product((0, 1), repeat=len(pair.edges)):
            out = separate(pair, x)
            points += 1
            if bool(out) != (x not in feasible) or any(i.violation(x) <= 0 for i in out):
                bad.append((name, labeling_str(x)))
    secs = time.perf_counter() - t0
    assert report(10, not bad, f"{len(pairs)} pairs, {points} 01-points, failures={bad[:5]} {secs:.1f}s")
