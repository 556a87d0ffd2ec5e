import pytest

from liftedmc.fixtures import (
    FIG7,
    NAMED,
    fixture_pairs,
    grid23,
    named_fixture,
    parse_gen_spec,
    random_fixture_pairs,
)
from liftedmc.graph import is_connected


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_fixtures_are_well_formed(name):
    fx = named_fixture(name)
    assert is_connected(fx.pair.base)
    if fx.f is not None:
        assert fx.f in fx.pair.F
    if fx.cut:
        assert set(fx.cut) <= fx.pair.base.edge_set


def test_fig7_fixtures_have_captions():
    assert len(FIG7) == 11
    assert all(ctor().condition in {"C1", "C2", "C3", "C4", "C5"} for ctor in FIG7.values())


def test_unknown_fixture():
    with pytest.raises(KeyError):
        named_fixture("fig99")


def test_grid23_has_three_lifted_edges():
    pair = grid23().pair
    assert (pair.n, pair.base.m, len(pair.F)) == (6, 7, 3)


def test_random_fixture_bounds():
    pairs = random_fixture_pairs(50, seed=0)
    assert len(pairs) == 50
    assert all(p.n <= 6 and len(p.edges) <= 12 and is_connected(p.base) for p in pairs)
    assert pairs == random_fixture_pairs(50, seed=0)


def test_fixture_pairs_cap():
    assert all(len(p.edges) <= 10 for _, p in fixture_pairs(max_edges=10))


@pytest.mark.parametrize(
    "spec, n, m, extra",
    [
        ("path(3) +0,2", 3, 2, 1),
        ("cycle(5)", 5, 5, 0),
        ("complete(4)", 4, 6, 0),
        ("grid(2,3)", 6, 7, 0),
    ],
)
def test_gen_specs(spec, n, m, extra):
    pair = parse_gen_spec(spec)
    assert (pair.n, pair.base.m, len(pair.F)) == (n, m, extra)


def test_gen_random_is_seeded_and_connected():
    a = parse_gen_spec("random n=5 p=0.6 lift=0.5 seed=7")
    assert a == parse_gen_spec("random n=5 p=0.6 lift=0.5 seed=7")
    assert is_connected(a.base)
    assert parse_gen_spec("grid(2,3) lift=0.3 seed=1") == parse_gen_spec("grid(2,3) lift=0.3 seed=1")


@pytest.mark.parametrize("spec", ["blob(3)", "path(x)", "random n=5", "path(3) +0,9"])
def test_gen_rejects_bad_specs(spec):
    with pytest.raises(ValueError):
        parse_gen_spec(spec)
