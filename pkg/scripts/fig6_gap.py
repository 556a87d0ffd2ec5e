"""Lifted versus plain multicut optimum on the fig6 triangle instance."""

from liftedmc.fixtures import fig6, fig6_multicut
from liftedmc.lifting import enumerate_lifted_multicuts, labeling_str
from liftedmc.solver import CostFunction, solve_branch_and_bound, solve_exact, solve_greedy


def show(fx):
    c = CostFunction(fx.costs)
    print(f"{fx.name}: edges {list(fx.pair.edges)} costs {fx.costs}")
    for x in enumerate_lifted_multicuts(fx.pair):
        print(f"  {labeling_str(x)}  objective {c.objective(x):+d}")
    for label, solve in (("exact", solve_exact), ("bnb", solve_branch_and_bound), ("greedy", solve_greedy)):
        s = solve(fx.pair, c)
        print(f"  {label:6s} -> {labeling_str(s.labeling)} objective {s.objective:+d} ({s.certificate})")


if __name__ == "__main__":
    show(fig6())
    show(fig6_multicut())
