"""Search seeded random instances for cases where greedy merging is beaten by the exact optimum."""

import argparse
import random
from dataclasses import dataclass

from liftedmc.formats import dumps, instance_to_json
from liftedmc.fixtures import random_pair
from liftedmc.solver import CostFunction, solve_branch_and_bound, solve_exact, solve_greedy


@dataclass
class GapConfig:
    instances: int = 100
    max_nodes: int = 6
    cost_range: int = 5
    seed: int = 2024


def run(cfg: GapConfig):
    rng = random.Random(cfg.seed)
    gaps = []
    for i in range(cfg.instances):
        pair = random_pair(rng.randint(2, cfg.max_nodes), rng.choice([0.4, 0.6, 0.8]), rng.choice([0.2, 0.5]),
                           seed=rng.randrange(10**6))
        c = CostFunction(tuple(rng.randint(-cfg.cost_range, cfg.cost_range) for _ in pair.edges))
        ex, bb, gr = solve_exact(pair, c), solve_branch_and_bound(pair, c), solve_greedy(pair, c)
        assert bb.objective == ex.objective, f"instance {i}: bnb {bb.objective} vs exact {ex.objective}"
        assert gr.objective >= ex.objective
        if gr.objective > ex.objective:
            gaps.append((i, gr.objective - ex.objective, pair, c))
    return gaps


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=100)
    ap.add_argument("--max-nodes", type=int, default=6)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--show", type=int, default=1, help="print this many gap instances as JSON")
    a = ap.parse_args()
    gaps = run(GapConfig(a.instances, a.max_nodes, seed=a.seed))
    print(f"greedy strictly worse on {len(gaps)} of {a.instances} instances")
    for i, gap, pair, c in gaps[: a.show]:
        print(f"instance {i}: gap {gap}")
        print(dumps(instance_to_json(pair, c)))


if __name__ == "__main__":
    main()
