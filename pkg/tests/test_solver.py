from fractions import Fraction
from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given

from liftedmc.fixtures import FIG6_COSTS, fig3, fig6, fig6_multicut, grid23, random_pair
from liftedmc.graph import GraphError
from liftedmc.inequality import canonical_inequalities
from liftedmc.lifting import enumerate_lifted_multicuts, is_lifted_multicut
from liftedmc.solver import (
    CostFunction,
    InstanceTooLarge,
    max_nodes_guard,
    separate,
    solve_branch_and_bound,
    solve_exact,
    solve_greedy,
)

from conftest import lifted_pairs


def brute_optimum(pair, costs):
    vals = [(sum(c * b for c, b in zip(costs, x)), x) for x in enumerate_lifted_multicuts(pair)]
    return min(vals)


def test_fig6_exact():
    fx = fig6()
    assert brute_optimum(fx.pair, FIG6_COSTS) == (0, (0, 0, 0))
    sol = solve_exact(fx.pair, fx.costs)
    assert (sol.labeling, sol.objective, sol.certificate) == ((0, 0, 0), 0, "optimal")


def test_fig6_plain_multicut():
    fx = fig6_multicut()
    assert brute_optimum(fx.pair, FIG6_COSTS) == (-2, (1, 1, 0))
    for solve in (solve_exact, solve_branch_and_bound):
        sol = solve(fx.pair, fx.costs)
        assert (sol.labeling, sol.objective) == ((1, 1, 0), -2)


def test_fig6_greedy_stops_at_singletons():
    fx = fig6()
    # from singletons every single merge raises the objective by one
    start = CostFunction(fx.costs).objective((1, 1, 1))
    one_merge = [CostFunction(fx.costs).objective(x) for x in [(0, 1, 1), (1, 0, 1)]]
    assert start == 1 and min(one_merge) == 2
    sol = solve_greedy(fx.pair, fx.costs)
    assert (sol.labeling, sol.objective, sol.certificate) == ((1, 1, 1), 1, "heuristic")
    assert sol.objective > solve_exact(fx.pair, fx.costs).objective


@given(lifted_pairs(max_nodes=6, max_edges=12), st.randoms(use_true_random=False))
def test_solvers_agree_with_brute_force(pair, rnd):
    costs = tuple(rnd.randint(-5, 5) for _ in pair.edges)
    best = brute_optimum(pair, costs)
    ex = solve_exact(pair, costs)
    bb = solve_branch_and_bound(pair, costs)
    gr = solve_greedy(pair, costs)
    assert (ex.objective, ex.labeling) == best
    assert (bb.objective, bb.labeling) == best
    assert is_lifted_multicut(pair, gr.labeling)
    assert gr.objective >= best[0]


def test_guard(monkeypatch):
    pair = grid23().pair
    costs = [1] * len(pair.edges)
    with pytest.raises(InstanceTooLarge):
        solve_exact(pair, costs, max_nodes=5)
    assert solve_exact(pair, costs, force=True, max_nodes=5).objective == 0
    monkeypatch.setenv("LMC_MAX_NODES", "4")
    assert max_nodes_guard() == 4
    monkeypatch.setenv("LMC_MAX_NODES", "four")
    with pytest.raises(ValueError):
        max_nodes_guard()


def test_cost_validation():
    pair = fig3().pair
    with pytest.raises(GraphError):
        CostFunction((1, 2.5, 3))
    with pytest.raises(GraphError):
        solve_exact(pair, (1, 2))
    with pytest.raises(GraphError):
        CostFunction.from_mapping(pair, {"0,1": 1, "0,2": 1})
    c = CostFunction.from_mapping(pair, {"0,1": 1, "0,2": 2, "1,2": 3})
    assert c.costs == (1, 2, 3)


def test_separate_fig3_path():
    pair = fig3().pair
    out = separate(pair, (0, 0, 1))
    assert [i.tag.family for i in out] == ["path"]
    assert out[0].coeffs == (-1, -1, 1) and out[0].violation((0, 0, 1)) == 1


def test_separate_fig3_cut():
    pair = fig3().pair
    x = (1, 1, 0)
    cuts = [i for t, i in canonical_inequalities(pair) if t.family == "cut"]
    assert [c.violation(x) for c in cuts] == [1, 1]
    out = separate(pair, x)
    assert [i.tag.family for i in out] == ["cut"]
    assert out[0] == cuts[0]


def test_separate_rejects_out_of_box():
    with pytest.raises(ValueError):
        separate(fig3().pair, (0, 0, 2))


@given(lifted_pairs(max_nodes=5, max_edges=9))
def test_separate_is_complete_on_01_points(pair):
    feasible = set(enumerate_lifted_multicuts(pair))
    for x in product((0, 1), repeat=len(pair.edges)):
        out = separate(pair, x)
        assert bool(out) == (x not in feasible)
        assert all(i.violation(x) > 0 for i in out)


@given(lifted_pairs(max_nodes=5, max_edges=9), st.randoms(use_true_random=False))
def test_separate_fractional(pair, rnd):
    x = tuple(Fraction(rnd.randint(0, 4), 4) for _ in pair.edges)
    out = separate(pair, x)
    canon = [(t, i) for t, i in canonical_inequalities(pair) if t.family in ("cycle", "path", "cut")]
    for ineq in out:
        assert ineq.violation(x) > 0
    for fam in ("cycle", "path", "cut"):
        worst = max((i.violation(x) for t, i in canon if t.family == fam), default=0)
        found = [i for i in out if i.tag.family == fam]
        assert bool(found) == (worst > 0)
        if found and fam != "cycle":
            assert found[0].violation(x) == worst


def test_random_pair_is_seeded():
    a = random_pair(6, 0.5, 0.3, seed=11)
    b = random_pair(6, 0.5, 0.3, seed=11)
    assert a == b
