"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py` (lines appear in the terminal
summary) or `python tests/test_acceptance.py`. All comparisons are exact.
"""

import sys
import time
from collections import Counter

import pytest

from gpdcalc.algebroid import b_operator_suite, lemma_formula_suite
from gpdcalc.cotangent_witnesses import form_witness, multivector_witness, sharp_morphism
from gpdcalc.crossed import check_crossed_module, check_morphism
from gpdcalc.exterior import covector_frame, de_rham_d, koszul_bracket, schouten_bracket, vector_frame, wedge_power_psharp
from gpdcalc.fixtures import anchored_fixtures
from gpdcalc.identities import dgla_residual, jacobiator_residual, oracle_residual, sharp_residual
from gpdcalc.models import CotangentModel, canonical_structures, is_multiplicative_form, is_multiplicative_multivector
from gpdcalc.poly import Chart
from gpdcalc.report import VerificationReport
from gpdcalc.sampling import make_rng, random_bivector, random_element, random_mult_form
from gpdcalc.suites import (
    b_operator_cases,
    bialgebra_lab_suite,
    closing_example_checks,
    cp_cases,
    cp_im_checks,
    reconstruction_checks,
)

SEED = 20240601
RESULTS = {}


def record(number, ok, elapsed, limit, detail):
    ok = ok and elapsed < limit
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f}s, limit {limit}s) {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def _failed_ids(rep):
    return dict(Counter(c.check_id for c in rep.failures()))


def test_criterion_1_closing_example_table():
    start = time.perf_counter()
    literal, corrected = {}, {}
    for n in (1, 2):
        model = CotangentModel(n)
        literal[n] = closing_example_checks(model, make_rng(SEED + n), 100, verbatim=True)
        corrected[n] = closing_example_checks(model, make_rng(SEED + n), 100, verbatim=False)
    elapsed = time.perf_counter() - start
    ok = all(r.passed for r in literal.values())
    detail = "; ".join(
        f"n={n}: literal failures {_failed_ids(literal[n]) or 'none'}, corrected lines {corrected[n].status}"
        for n in (1, 2)
    )
    assert record(1, ok, elapsed, 60, detail), detail


def test_criterion_2_oracle_equivalence():
    start = time.perf_counter()
    rng = make_rng(SEED)
    charts = [Chart(("x1", "x2")), Chart(("x1", "x2", "x3", "x4"))]
    bad = []
    for i in range(200):
        chart = charts[i % 2]
        P = random_bivector(rng, vector_frame(chart))
        a = random_element(rng, covector_frame(chart), rng.randint(0, 3))
        b = random_element(rng, covector_frame(chart), rng.randint(0, 3))
        if not oracle_residual(P, a, b).is_zero():
            bad.append((P, a, b))
    elapsed = time.perf_counter() - start
    assert record(2, not bad, elapsed, 120, f"200 triples, {len(bad)} mismatches"), bad[:1]


def test_criterion_3_sharp_identities():
    start = time.perf_counter()
    rng = make_rng(SEED)
    chart = Chart(("x1", "x2", "x3"))
    V, C = vector_frame(chart), covector_frame(chart)
    bad, non_poisson = [], 0
    for _ in range(200):
        P = random_bivector(rng, V)
        non_poisson += not schouten_bracket(P, P).is_zero()
        a1, a2, a3 = (random_element(rng, C, 1) for _ in range(3))
        if not sharp_residual(P, a1, a2).is_zero() or not jacobiator_residual(P, a1, a2, a3).is_zero():
            bad.append((P, a1, a2, a3))
    elapsed = time.perf_counter() - start
    ok = not bad and non_poisson > 0
    detail = f"200 samples ({non_poisson} with [P,P] != 0), {len(bad)} failures"
    assert record(3, ok, elapsed, 60, detail), bad[:1]


def test_criterion_4_dgla_law():
    start = time.perf_counter()
    rng = make_rng(SEED)
    charts = [Chart(("x1", "x2", "x3")), Chart(("x1", "x2", "x3", "x4"))]
    bad = []
    for i in range(200):
        chart = charts[i % 2]
        P = random_bivector(rng, vector_frame(chart))
        a = random_element(rng, covector_frame(chart), rng.randint(0, 3))
        b = random_element(rng, covector_frame(chart), rng.randint(0, 3))
        if not dgla_residual(P, a, b).is_zero():
            bad.append((P, a, b))
    elapsed = time.perf_counter() - start
    assert record(4, not bad, elapsed, 60, f"200 pairs, {len(bad)} failures"), bad[:1]


def test_criterion_5_b_operator_suite():
    start = time.perf_counter()
    fixtures = anchored_fixtures()
    rep = VerificationReport("criterion-5")
    cases = b_operator_cases(make_rng(SEED), fixtures, max_k=3)
    for name, A, theta in cases:
        rep.extend(lemma_formula_suite(A, theta), prefix=f"{name}.chain.")
        rep.extend(b_operator_suite(A, theta), prefix=f"{name}.b.")
    elapsed = time.perf_counter() - start
    ok = rep.passed and len(fixtures) == 20 and all(any(f for row in A.anchor for f in row) for _, A in fixtures)
    detail = f"{len(fixtures)} fixtures, {len(cases)} theta, {len(rep.checks)} checks, {len(rep.failures())} failures"
    assert record(5, ok, elapsed, 30, detail), rep.failures()[:1]


def test_criterion_6_cp_im_machinery():
    start = time.perf_counter()
    rng = make_rng(SEED)
    rep = VerificationReport("criterion-6")
    for name, A, gamma in cp_cases(rng, anchored_fixtures(), 100):
        cp_im_checks(rep, name, A, gamma)
    reconstruction_checks(rep, rng, 100)
    elapsed = time.perf_counter() - start
    counts = Counter(c.check_id for c in rep.checks)
    detail = f"{dict(counts)}, failures {_failed_ids(rep) or 'none'}"
    assert record(6, rep.passed, elapsed, 60, detail), rep.failures()[:1]


def test_criterion_7_model_closure():
    start = time.perf_counter()
    rng = make_rng(SEED)
    bad = []
    for i in range(300):
        model = CotangentModel(1 + i % 2)
        _, P = canonical_structures(model)
        top = min(3, 2 * model.n)
        a = random_mult_form(rng, model, rng.randint(0, top))
        b = random_mult_form(rng, model, rng.randint(0, top))
        ok = is_multiplicative_form(model, koszul_bracket(P, a, b)).ok and is_multiplicative_form(model, de_rham_d(a)).ok
        if a.degree >= 1:
            ok = ok and is_multiplicative_multivector(model, wedge_power_psharp(P, a)).ok
        if not ok:
            bad.append((a, b))
    elapsed = time.perf_counter() - start
    assert record(7, not bad, elapsed, 120, f"300 pairs on n in {{1,2}}, {len(bad)} failures"), bad[:1]


def test_criterion_8_crossed_modules():
    start = time.perf_counter()
    parts, ok = [], True
    for n in (1, 2):
        model = CotangentModel(n)
        for w in (form_witness(model), multivector_witness(model)):
            r = check_crossed_module(w, trials=200, seed=SEED)
            ok &= r.passed
            parts.append(f"{w.name} {r.status}")
        m = check_morphism(sharp_morphism(model, "literal"), trials=200, seed=SEED)
        ok &= m.passed
        parts.append(f"literal square n={n} {m.status} {_failed_ids(m) or ''}".rstrip())
        g = check_morphism(sharp_morphism(model, "graded"), trials=200, seed=SEED)
        parts.append(f"graded square n={n} {g.status} (informational)")
        for neg in (form_witness(model, sign=-1), multivector_witness(model, sign=-1)):
            r = check_crossed_module(neg, trials=20, seed=SEED)
            nonzero = all(c.witness.get("residual") not in (None, "0") for c in r.failures())
            ok &= (not r.passed) and nonzero
            parts.append(f"{neg.name} {'fails' if not r.passed else 'passes'} {_failed_ids(r)}")
        r = check_morphism(sharp_morphism(model, "unsigned"), trials=20, seed=SEED)
        ok &= not r.passed
        parts.append(f"unsigned square n={n} {'fails' if not r.passed else 'passes'}")
    elapsed = time.perf_counter() - start
    detail = "; ".join(parts)
    assert record(8, ok, elapsed, 120, detail), detail


def test_criterion_9_bialgebra_lab():
    start = time.perf_counter()
    rep = bialgebra_lab_suite()
    elapsed = time.perf_counter() - start
    detail = f"{len(rep.checks)} checks, {len(rep.failures())} failures"
    assert record(9, rep.passed, elapsed, 10, detail), rep.failures()[:1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
