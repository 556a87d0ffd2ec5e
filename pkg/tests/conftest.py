import random

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from liftedmc.fixtures import random_pair

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def lifted_pairs(draw, max_nodes=5, max_edges=9):
    """Small connected pairs built through the seeded generator."""
    n = draw(st.integers(2, max_nodes))
    seed = draw(st.integers(0, 10_000))
    p = draw(st.sampled_from([0.4, 0.6, 0.9]))
    lift = draw(st.sampled_from([0.0, 0.3, 0.7]))
    return random_pair(n, p, lift, seed, max_edges=max_edges)


def brute_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in brute_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def rng(seed):
    return random.Random(seed)
