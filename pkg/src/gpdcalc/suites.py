"""Verification suites behind `gpdcalc verify`.

Each suite draws from its own Mersenne Twister stream seeded with the given
seed, so a suite produces the same report whether run alone or inside `all`.
"""

import time
from itertools import permutations

from . import cotangent_formulas as cf
from .algebroid import (
    cp_check,
    cp_differential,
    cp_from_base_form,
    cp_to_im,
    d_rho_star,
    im_check,
    im_differential,
    im_to_cp,
    b_operator_suite,
    lemma_formula_suite,
    transitive_reconstruct_gamma,
    validate_algebroid,
)
from .bialgebra import bialgebra_suite, fixture_bialgebras
from .cotangent_witnesses import form_witness, multivector_witness, sharp_morphism
from .crossed import check_crossed_module, check_morphism
from .exterior import (
    contract,
    covector_frame,
    de_rham_d,
    koszul_bracket,
    schouten_bracket,
    vector_frame,
    wedge_power_psharp,
)
from .fixtures import anchor_violating, anchored_fixtures, transitive_fixtures
from .identities import (
    dd_residual,
    dgla_residual,
    jacobiator_residual,
    koszul_antisymmetry_residual,
    oracle_residual,
    schouten_antisymmetry_residual,
    schouten_jacobi_residual,
    sharp_residual,
)
from .models import (
    CotangentModel,
    action_on_base,
    canonical_structures,
    invariant_lift,
    iota_base_form,
    is_multiplicative_form,
    is_multiplicative_multivector,
    leading_terms,
    multiplicativity_defect,
    omega_sharp_iso,
    s_pullback,
)
from .poly import Chart
from .report import VerificationReport
from .sampling import (
    make_rng,
    random_base_form,
    random_bivector,
    random_element,
    random_mult_form,
    random_mult_multivector,
    random_poly,
    random_q_poly,
    random_section,
)

SUITES = ("exterior", "algebroid", "tstar-example", "crossed-module", "bialgebra", "all")

A_DD = "exterior/d-squared"
A_SCH_ANTI = "schouten/antisymmetry"
A_SCH_JAC = "schouten/jacobi"
A_KOS_ANTI = "koszul/antisymmetry"
A_ORACLE = "koszul/lie-derivative-formula"
A_DGLA = "koszul/dgla"
A_SHARP = "koszul/sharp-morphism-defect"
A_JACOBIATOR = "koszul/jacobiator"
A_VALID = "algebroid/fixture-validity"
A_NEG = "negative-control"
A_CPIM = "characteristic-pair/im-correspondence"
A_CPD = "characteristic-pair/differential"
A_IMD = "im-form/differential"
A_RECON = "transitive/reconstruction"
A_LINE = "tstar/closing-example"
A_MULT = "tstar/multiplicativity"
A_SHARPISO = "tstar/omega-sharp"
A_CONTR = "tstar/contraction-lift"
A_PAIR = "tstar/pair-multiplicativity"


def _charts():
    c2 = Chart(("x1", "x2"))
    c4 = Chart(("x1", "x2", "x3", "x4"))
    return [c2, c4]


# ---------------------------------------------------------------------------
# exterior


def exterior_suite(trials=20, seed=0):
    rng = make_rng(seed)
    rep = VerificationReport("exterior")
    charts = _charts()
    for t in range(trials):
        chart = charts[t % 2]
        V, C = vector_frame(chart), covector_frame(chart)
        small_V = vector_frame(charts[0])
        w = random_element(rng, C, rng.randint(0, 3))
        rep.expect_zero("d-squared", A_DD, dd_residual(w), w=w)
        a, b, c = (random_element(rng, small_V, rng.randint(1, 2), density=0.5) for _ in range(3))
        rep.expect_zero("schouten-antisymmetry", A_SCH_ANTI, schouten_antisymmetry_residual(a, b), a=a, b=b)
        rep.expect_zero("schouten-jacobi", A_SCH_JAC, schouten_jacobi_residual(a, b, c), a=a, b=b, c=c)
        P = random_bivector(rng, V, density=0.5)
        x = random_element(rng, C, rng.randint(0, 3), density=0.4)
        y = random_element(rng, C, rng.randint(0, 3), density=0.4)
        rep.expect_zero("koszul-oracle", A_ORACLE, oracle_residual(P, x, y), P=P, a=x, b=y)
        rep.expect_zero("koszul-antisymmetry", A_KOS_ANTI, koszul_antisymmetry_residual(P, x, y), P=P, a=x, b=y)
        rep.expect_zero("dgla", A_DGLA, dgla_residual(P, x, y), P=P, a=x, b=y)
        a1, a2, a3 = (random_element(rng, C, 1, density=0.5) for _ in range(3))
        rep.expect_zero("sharp-identity", A_SHARP, sharp_residual(P, a1, a2), P=P, a1=a1, a2=a2)
        rep.expect_zero("jacobiator", A_JACOBIATOR, jacobiator_residual(P, a1, a2, a3), P=P, a1=a1, a2=a2, a3=a3)
    rep.note("schouten sign pinned by the sharp identity; the opposite convention is kept for comparison only")
    return rep


# ---------------------------------------------------------------------------
# algebroid


def b_operator_cases(rng, fixtures, max_k=3):
    """(name, A, theta) with theta = D_rho* gamma for random gamma, k <= max_k."""
    out = []
    for name, A in fixtures:
        for k in range(1, min(max_k, A.n) + 1):
            g = random_element(rng, A.base_forms, k)
            theta = d_rho_star(A, A.to_split(g))
            out.append((name, A, theta))
    return out


def cp_cases(rng, fixtures, count):
    """count random (name, A, gamma) with 1 <= deg gamma <= n."""
    out = []
    for i in range(count):
        name, A = fixtures[i % len(fixtures)]
        k = rng.randint(1, A.n)
        out.append((name, A, random_element(rng, A.base_forms, k, density=0.7)))
    return out


def cp_im_checks(rep, name, A, gamma):
    cp = cp_from_base_form(A, gamma)
    r = cp_check(cp)
    rep.add("cp-from-base-form", A_CPIM, r.passed, fixture=name, gamma=gamma,
            failed=",".join(c.check_id for c in r.failures()[:3]))
    if not r.passed:
        return
    im = cp_to_im(cp, validate=False)
    r = im_check(im)
    rep.add("cp-to-im", A_CPIM, r.passed, fixture=name, gamma=gamma)
    rep.add("round-trip", A_CPIM, im_to_cp(im, validate=False) == cp, fixture=name, gamma=gamma)
    if cp.k <= A.n:
        d1 = cp_differential(cp)
        ok = cp_check(d1).passed
        rep.add("cp-differential-valid", A_CPD, ok, fixture=name, gamma=gamma)
        if ok and d1.k <= A.n:
            rep.add("cp-d-squared", A_CPD, cp_differential(d1).is_zero(), fixture=name, gamma=gamma)
        e1 = im_differential(im)
        ok = im_check(e1).passed
        rep.add("im-differential-valid", A_IMD, ok, fixture=name, gamma=gamma)
        if ok and e1.k <= A.n:
            rep.add("im-d-squared", A_IMD, im_differential(e1).is_zero(), fixture=name, gamma=gamma)


def reconstruction_checks(rep, rng, count):
    fixtures = transitive_fixtures()
    for i in range(count):
        name, A, sigma = fixtures[i % len(fixtures)]
        k = rng.randint(2, A.n)
        gamma = random_element(rng, A.base_forms, k, density=0.8)
        theta = d_rho_star(A, A.to_split(gamma))
        got = transitive_reconstruct_gamma(A, theta, sigma)
        rep.expect_equal("reconstruct", A_RECON, got, gamma, fixture=name)


def algebroid_suite(trials=20, seed=0):
    rng = make_rng(seed)
    rep = VerificationReport("algebroid")
    fixtures = anchored_fixtures()
    for name, A in fixtures:
        r = validate_algebroid(A)
        rep.add("fixture-valid", A_VALID, r.passed, fixture=name)
    bad = validate_algebroid(anchor_violating())
    rep.add("negative-control.anchor-violation", A_NEG, not bad.passed,
            failed=",".join(c.check_id for c in bad.failures()[:1]))
    for name, A, theta in b_operator_cases(rng, fixtures):
        for prefix, r in (("chain.", lemma_formula_suite(A, theta)), ("b-operator.", b_operator_suite(A, theta))):
            for c in r.checks:
                rep.add(prefix + c.check_id, c.anchor, c.passed, fixture=name, **c.witness)
    for name, A, gamma in cp_cases(rng, fixtures, trials):
        cp_im_checks(rep, name, A, gamma)
    reconstruction_checks(rep, rng, trials)
    return rep


# ---------------------------------------------------------------------------
# closing example on T*M


def _words(n, k):
    return list(permutations(range(n), k))


def closing_example_checks(model, rng, trials, verbatim=False):
    """Compare the Koszul bracket against the closed-form lines on random coefficients."""
    rep = VerificationReport(f"closing-example-n{model.n}")
    n = model.n
    _, P = canonical_structures(model)

    def qp():
        return random_q_poly(rng, model)

    def vec():
        return [qp() for _ in range(n)]

    suffix = "" if verbatim else "-corrected"
    for _ in range(trials):
        T = [vec() for _ in range(n)]
        Tp = [vec() for _ in range(n)]
        v, vp = vec(), vec()
        g = [random_poly(rng, model.base_chart) for _ in range(n)]
        th, thp = cf.linear_one_form(model, T), cf.linear_one_form(model, Tp)
        vv, vvp = cf.vertical_one_form(model, v), cf.vertical_one_form(model, vp)
        rep.expect_equal("closing-example-line-1", A_LINE, koszul_bracket(P, th, thp),
                         cf.one_form_linear_linear(model, T, Tp), left=th, right=thp)
        rep.expect_equal("closing-example-line-2", A_LINE, koszul_bracket(P, th, vvp),
                         cf.one_form_linear_vertical(model, T, vp), left=th, right=vvp)
        rep.expect_equal("closing-example-line-3", A_LINE, koszul_bracket(P, vv, vvp),
                         cf.one_form_vertical_vertical(model, v, vp), left=vv, right=vvp)
        gamma = cf.base_one_form(model, g)
        rep.expect_equal("closing-example-line-4", A_LINE, action_on_base(model, P, th + vv, gamma),
                         cf.one_form_action(model, T, v, g), theta=th + vv, gamma=gamma)
        for k in (1, 2):
            for l in (1, 2):
                multi_index_checks(rep, model, P, rng, k, l, verbatim, suffix)
    return rep


def multi_index_checks(rep, model, P, rng, k, l, verbatim, suffix):
    n = model.n

    def vec():
        return [random_q_poly(rng, model) for _ in range(n)]

    tag = f"k{k}l{l}"
    Is, As = _words(n, k), _words(n, l)
    if Is and As:
        I, A = rng.choice(Is), rng.choice(As)
        t, tp = vec(), vec()
        a, b = cf.linear_word_form(model, I, t), cf.linear_word_form(model, A, tp)
        rep.expect_equal("closing-example-multi-line-1" + suffix, A_LINE, koszul_bracket(P, a, b),
                         cf.word_linear_linear(model, I, t, A, tp, corrected=not verbatim), case=tag, left=a, right=b)
    Ls, Ks = _words(n, l - 1), _words(n, k - 1)
    if Is:
        I, L = rng.choice(Is), rng.choice(Ls)
        t, tp = vec(), vec()
        a, b = cf.linear_word_form(model, I, t), cf.mixed_word_form(model, L, tp)
        rep.expect_equal("closing-example-multi-line-2" + suffix, A_LINE, koszul_bracket(P, a, b),
                         cf.word_linear_mixed(model, I, t, L, tp, corrected=not verbatim), case=tag, left=a, right=b)
    K, L = rng.choice(Ks), rng.choice(Ls)
    t, tp = vec(), vec()
    a, b = cf.mixed_word_form(model, K, t), cf.mixed_word_form(model, L, tp)
    rep.expect_equal("closing-example-multi-line-3" + suffix, A_LINE, koszul_bracket(P, a, b),
                     cf.word_mixed_mixed(model, K, t, L, tp, corrected=not verbatim), case=tag, left=a, right=b)
    Lb = _words(n, l)
    if Lb:
        K, L = rng.choice(Ks), rng.choice(Lb)
        t, u = vec(), vec()
        g = random_poly(rng, model.base_chart)
        if Is:
            I = rng.choice(Is)
            theta = cf.linear_word_form(model, I, t) + cf.mixed_word_form(model, K, u)
        else:
            I, t = (), cf.zero_coeffs(model)
            theta = cf.mixed_word_form(model, K, u)
        gamma = cf.base_word_form(model, L, g)
        rep.expect_equal("closing-example-multi-action" + suffix, A_LINE, action_on_base(model, P, theta, gamma),
                         cf.word_action(model, I, t, K, u, L, g, corrected=not verbatim), case=tag, theta=theta, gamma=gamma)


def closure_checks(rep, model, rng, trials, max_degree=3):
    """Brackets, d and wedge powers of P# keep multiplicative forms multiplicative."""
    _, P = canonical_structures(model)
    top = min(max_degree, 2 * model.n)
    for _ in range(trials):
        a = random_mult_form(rng, model, rng.randint(0, top))
        b = random_mult_form(rng, model, rng.randint(0, top))
        br = koszul_bracket(P, a, b)
        r = is_multiplicative_form(model, br)
        rep.add("closure-bracket", A_MULT, r.ok, a=a, b=b, reason=r.witness)
        r = is_multiplicative_form(model, de_rham_d(a))
        rep.add("closure-d", A_MULT, r.ok, a=a, reason=r.witness)
        if a.degree >= 1:
            r = is_multiplicative_multivector(model, wedge_power_psharp(P, a))
            rep.add("closure-wedge-sharp", A_MULT, r.ok, a=a, reason=r.witness)


def tstar_suite(n=1, trials=20, seed=0, verbatim=False):
    rng = make_rng(seed)
    model = CotangentModel(n)
    omega, P = canonical_structures(model)
    rep = VerificationReport(f"tstar-example-n{n}")
    rep.add("canonical-closed", A_MULT, de_rham_d(omega).is_zero())
    rep.add("canonical-poisson", A_MULT, schouten_bracket(P, P).is_zero())
    rep.extend(closing_example_checks(model, rng, trials, verbatim))
    closure_checks(rep, model, rng, trials)
    for _ in range(trials):
        k = rng.randint(1, min(3, n + 1))
        Pi = random_mult_multivector(rng, model, k)
        Th = random_mult_form(rng, model, k)
        form = omega_sharp_iso(model, Pi)
        rep.add("omega-sharp-multiplicative", A_SHARPISO, is_multiplicative_form(model, form).ok, Pi=Pi)
        rep.expect_equal("omega-sharp-round-trip", A_SHARPISO, omega_sharp_iso(model, form), Pi, Pi=Pi)
        pi = leading_terms(model, Pi)
        gamma = random_base_form(rng, model, 1)
        lhs = contract(s_pullback(model, gamma), Pi)
        rhs = invariant_lift(model, iota_base_form(model, gamma, pi))
        rep.expect_equal("contraction-form-into-multivector", A_CONTR, lhs, rhs, Pi=Pi, gamma=gamma)
        u = random_section(rng, model.algebroid, 1)
        theta = leading_terms(model, Th)
        A = model.algebroid
        iu = A.theta_of(theta, [u.comps.get((n + a,), 0) for a in range(A.rank)])
        lhs = contract(invariant_lift(model, u), Th)
        rep.expect_equal("contraction-section-into-form", A_CONTR, lhs, s_pullback(model, iu), Theta=Th, u=u)
        small = random_mult_form(rng, model, rng.randint(1, min(2, 2 * n)), density=0.4)
        rep.expect_zero("pair-multiplicativity", A_PAIR, multiplicativity_defect(model, small), Theta=small)
    if not verbatim:
        rep.note("multi-index lines are checked with corrected signs (they agree with the literal lines for n <= 2 except lines 2 and 3); run with --verbatim for the literal lines")
    return rep


# ---------------------------------------------------------------------------
# crossed modules


def crossed_suite(n=1, trials=20, seed=0, verbatim=False):
    model = CotangentModel(n)
    rep = VerificationReport(f"crossed-module-n{n}")
    for w in (form_witness(model), multivector_witness(model)):
        rep.extend(check_crossed_module(w, trials, seed), prefix=f"{w.name}.")
    for w in (form_witness(model, sign=-1), multivector_witness(model, sign=-1)):
        r = check_crossed_module(w, max(trials, 20), seed)
        rep.add(f"negative-control.{w.name}", A_NEG, not r.passed,
                failed=",".join(sorted({c.check_id for c in r.failures()})))
    conv = "literal" if verbatim else "graded"
    m = sharp_morphism(model, conv)
    rep.extend(check_morphism(m, trials, seed), prefix=f"{m.name}.")
    neg = sharp_morphism(model, "unsigned")
    r = check_morphism(neg, max(trials, 20), seed)
    rep.add(f"negative-control.{neg.name}", A_NEG, not r.passed,
            failed=",".join(sorted({c.check_id for c in r.failures()})))
    if not verbatim:
        rep.note("wedge powers of P# and p# carry the degree twist (-1)^(k(k-1)/2); run with --verbatim for the literal sign")
    return rep


# ---------------------------------------------------------------------------
# bialgebras


def bialgebra_lab_suite():
    rep = VerificationReport("bialgebra")
    for B in fixture_bialgebras():
        rep.extend(bialgebra_suite(B), prefix=f"{B.name}.")
    return rep


def run_suite(name, n=1, trials=20, seed=0, verbatim=False, timing=False):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    start = time.perf_counter()
    if name == "exterior":
        rep = exterior_suite(trials, seed)
    elif name == "algebroid":
        rep = algebroid_suite(trials, seed)
    elif name == "tstar-example":
        rep = tstar_suite(n, trials, seed, verbatim)
    elif name == "crossed-module":
        rep = crossed_suite(n, trials, seed, verbatim)
    elif name == "bialgebra":
        rep = bialgebra_lab_suite()
    else:
        rep = VerificationReport("all")
        for sub in SUITES[:-1]:
            rep.extend(run_suite(sub, n, trials, seed, verbatim), prefix=f"{sub}.")
    if timing:
        rep.timing = time.perf_counter() - start
    return rep


