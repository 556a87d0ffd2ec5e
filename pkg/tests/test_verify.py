import pytest
from hypothesis import given

from liftedmc.facets import VwCutContext, classify_zero_components
from liftedmc.fixtures import c4_k4, fig3, fig4a, fig4b, named_fixture
from liftedmc.graph import enumerate_vw_cuts
from liftedmc.inequality import cut_inequality
from liftedmc.polytope import face
from liftedmc.verify import SUITES, check_lemma12, designated_cut_report, run_suite, suite_lemma8

from conftest import lifted_pairs

SMALL = [fig3, fig4a, fig4b, c4_k4]


@pytest.mark.parametrize("suite", SUITES)
@pytest.mark.parametrize("ctor", SMALL, ids=lambda c: c.__name__)
def test_suites_pass_on_small_fixtures(suite, ctor):
    res = run_suite(suite, ctor().pair)
    assert res.ok, res.disagreements
    assert res.to_json()["ok"] is True


def test_fig3_lemma8_scans_eight():
    res = suite_lemma8(fig3().pair)
    assert res.checked == 8 and res.counts == {"feasible": 4, "infeasible": 4}


def test_lemma8_cap():
    with pytest.raises(ValueError):
        suite_lemma8(fig3().pair, max_edges=2)


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", fig3().pair)


def test_designated_fig7a():
    fx = named_fixture("fig7a")
    rep = designated_cut_report(fx.pair, fx.f, fx.cut)
    assert rep["oracle_facet"] is False
    assert "C1" in rep["violated_conditions"]


@given(lifted_pairs(max_nodes=5, max_edges=9))
def test_vectorised_lemma12_matches_per_row(pair):
    for f in pair.F:
        for c in enumerate_vw_cuts(pair.base, *f):
            ctx = VwCutContext(pair, f, c)
            S = face(pair, cut_inequality(pair, f, c))
            slow_bad = []
            for x in S.tolist():
                comps = classify_zero_components(ctx, x)
                kinds = [k for _, k in comps]
                joined = any(ctx.v in nodes and ctx.w in nodes for nodes, _ in comps)
                has_proper = "proper" in kinds
                if "neither" in kinds or kinds.count("proper") > 1 or has_proper != (x[pair.lifted.index[f]] == 0) \
                        or has_proper != joined:
                    slow_bad.append(x)
            assert bool(slow_bad) == any("labeling" in b for b in check_lemma12(ctx, S))
            assert not slow_bad
