import json

import pytest

from gpdcalc.fixtures import anchored_fixtures, frame_change, tangent_algebroid, transitive_fixtures
from gpdcalc.algebroid import validate_algebroid
from gpdcalc.poly import PolyExpr
from gpdcalc.sampling import make_rng, random_poly, sample_bounds
from gpdcalc.suites import SUITES, run_suite


@pytest.mark.parametrize("name", [s for s in SUITES if s != "all"])
def test_suites_pass_and_are_deterministic(name):
    a = run_suite(name, n=1, trials=2, seed=4)
    b = run_suite(name, n=1, trials=2, seed=4)
    assert a.passed, a.failures()[:1]
    assert a.to_text() == b.to_text()
    assert a.to_json() == b.to_json()


def test_every_check_has_an_anchor():
    rep = run_suite("all", trials=1, seed=0)
    assert all(c["anchor"] for c in json.loads(rep.to_json())["checks"])


def test_suite_is_independent_of_composition():
    alone = run_suite("exterior", trials=2, seed=3)
    combined = run_suite("all", trials=2, seed=3)
    ext = [c for c in combined.checks if c.check_id.startswith("exterior.")]
    assert [c.check_id for c in ext] == ["exterior." + c.check_id for c in alone.checks]


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("bogus")


def test_timing_is_opt_in():
    assert "timing" not in run_suite("bialgebra").to_text()
    assert "timing_seconds" in run_suite("bialgebra", timing=True).to_text()


def test_verbatim_tstar_fails():
    assert not run_suite("tstar-example", trials=3, seed=0, verbatim=True).passed


def test_sample_bounds():
    chart = tangent_algebroid().chart
    with sample_bounds(max_degree=1, coeff=1):
        f = random_poly(make_rng(0), chart, max_terms=6)
    assert all(sum(e) <= 1 for e in f.terms)
    assert all(abs(c) <= 1 for c in f.terms.values())


class TestFixtures:
    def test_anchored_fixtures_are_reproducible(self):
        a = [(name, A.anchor) for name, A in anchored_fixtures()]
        b = [(name, A.anchor) for name, A in anchored_fixtures()]
        assert a == b

    def test_frame_change_stays_valid(self):
        A = tangent_algebroid()
        y = PolyExpr.var(A.chart, "y")
        one, zero = PolyExpr.one(A.chart), PolyExpr.zero(A.chart)
        B = frame_change(A, [[one, y], [zero, one]])
        assert validate_algebroid(B).passed
        # [e1 + y e2, e2] = -e2
        assert B.bracket_frame(0, 1) == [zero, -one]

    def test_transitive_sigma_is_a_right_inverse(self):
        for _, A, sigma in transitive_fixtures():
            for i in range(A.n):
                for j in range(A.n):
                    s = sum((A._poly(sigma[i][a]) * A.anchor[a][j] for a in range(A.rank)), PolyExpr.zero(A.chart))
                    assert s == (1 if i == j else 0)
