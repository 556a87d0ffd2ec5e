"""Run every verification suite over the shipped fixture set and tabulate the results."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from liftedmc.fixtures import fixture_pairs
from liftedmc.verify import SUITES, run_suite


@dataclass
class SweepConfig:
    random_count: int = 50
    seed: int = 0
    max_edges: int | None = None
    skip: tuple[str, ...] = ()


def sweep(cfg: SweepConfig) -> dict:
    pairs = fixture_pairs(cfg.max_edges, cfg.random_count, cfg.seed)
    table = {}
    for suite in SUITES:
        if suite in cfg.skip:
            continue
        t0 = time.perf_counter()
        checked, bad, counts = 0, [], {}
        for name, pair in pairs:
            if suite == "lemma8" and len(pair.edges) > 16:
                continue
            res = run_suite(suite, pair)
            checked += res.checked
            for k, v in res.counts.items():
                counts[k] = counts.get(k, 0) + v
            bad += [{"pair": name, **d} for d in res.disagreements]
        table[suite] = {"checked": checked, "disagreements": bad, "seconds": round(time.perf_counter() - t0, 2),
                        "counts": counts}
        print(f"{suite:15s} checked={checked:7d} disagreements={len(bad)} {table[suite]['seconds']}s", flush=True)
    return table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--random-count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-edges", type=int)
    ap.add_argument("--skip", nargs="*", default=[])
    ap.add_argument("--out", help="write the full table as JSON")
    a = ap.parse_args()
    cfg = SweepConfig(a.random_count, a.seed, a.max_edges, tuple(a.skip))
    table = sweep(cfg)
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"config": asdict(cfg), "suites": table}, fh, indent=1, default=str)


if __name__ == "__main__":
    main()
