from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpdcalc.algebroid import (
    AlgebroidChart,
    CharacteristicPair,
    IMForm,
    b_of_0k,
    b_of_k0,
    b_operator_suite,
    ce_differential,
    ce_differential_oracle,
    ce_evaluate,
    check_rho_compatible,
    cp_check,
    cp_differential,
    cp_from_base_form,
    cp_to_im,
    d_rho,
    d_rho_star,
    im_check,
    im_coboundary,
    im_differential,
    im_to_cp,
    lemma_formula_suite,
    transitive_reconstruct_gamma,
    validate_algebroid,
    zero_cp,
    zero_im,
)
from gpdcalc.errors import (
    DegreeError,
    FrameMismatch,
    InconsistentTheta,
    InvalidAlgebroid,
    NotRhoCompatible,
    NotRightInverse,
    ValidationFailure,
)
from gpdcalc.exterior import GradedElement, de_rham_d, lie_derivative, parse_element
from gpdcalc.fixtures import (
    anchor_violating,
    anchored_fixtures,
    euclidean_action_plane,
    lie_bundle_plane,
    tangent_algebroid,
    transitive_fixtures,
)
from gpdcalc.poly import PolyExpr
from gpdcalc.sampling import make_rng, random_element, random_poly

TM = tangent_algebroid()
LIE = lie_bundle_plane()
FIXTURES = anchored_fixtures()
seeds = st.integers(min_value=0, max_value=10_000)
fixture_index = st.integers(min_value=0, max_value=len(FIXTURES) - 1)


def base(text, A=TM, degree=None):
    return parse_element(text, A.base_forms, degree)


def split(text, A=TM, degree=None):
    return parse_element(text, A.split_covectors, degree)


def splitvec(text, A=TM, degree=None):
    return parse_element(text, A.split_vectors, degree)


def random_gamma(rng, A, k):
    return random_element(rng, A.base_forms, k, density=0.7)


class TestValidate:
    def test_tangent_algebroid(self):
        assert validate_algebroid(TM).passed

    def test_lie_algebra_bundle(self):
        assert validate_algebroid(LIE).passed

    def test_anchor_not_a_morphism(self):
        rep = validate_algebroid(anchor_violating())
        assert not rep.passed
        bad = rep.failures()[0]
        assert bad.check_id == "anchor-morphism"
        assert str(bad.witness["residual"]) == "Dx"

    def test_all_fixtures_valid(self):
        assert len(FIXTURES) == 20
        assert all(validate_algebroid(A).passed for _, A in FIXTURES)

    def test_require_valid(self):
        with pytest.raises(InvalidAlgebroid):
            anchor_violating().require_valid()


class TestChevalleyEilenberg:
    def test_de_rham_in_disguise(self):
        f = GradedElement.scalar(TM.bundle_covectors, PolyExpr.var(TM.chart, "x"))
        df = ce_differential(TM, f)
        assert ce_evaluate(TM, df, [TM.frame_section(0)]) == 1
        assert ce_evaluate(TM, df, [TM.frame_section(1)]) == 0

    def test_single_bracket_term(self):
        E1 = GradedElement.basis(LIE.bundle_covectors, 0)
        dE1 = ce_differential(LIE, E1)
        assert ce_evaluate(LIE, dE1, [LIE.frame_section(0), LIE.frame_section(1)]) == -1

    def test_rejects_invalid_algebroid(self):
        A = anchor_violating()
        with pytest.raises(InvalidAlgebroid):
            ce_differential(A, GradedElement.basis(A.bundle_covectors, 0))

    def test_rejects_wrong_frame(self):
        with pytest.raises(FrameMismatch):
            ce_differential(TM, base("dx"))


@settings(max_examples=20, deadline=None)
@given(seeds, fixture_index, st.integers(0, 2))
def test_ce_squares_to_zero_and_matches_formula(seed, i, p):
    _, A = FIXTURES[i]
    rng = make_rng(seed)
    lam = random_element(rng, A.bundle_covectors, min(p, A.rank), density=0.7)
    d1 = ce_differential(A, lam)
    assert ce_differential(A, d1).is_zero()
    if lam.degree + 1 <= A.rank:
        secs = [[random_poly(rng, A.chart, max_degree=1) for _ in range(A.rank)] for _ in range(lam.degree + 1)]
        assert ce_evaluate(A, d1, secs) == ce_differential_oracle(A, lam, secs)


class TestDerivations:
    def test_d_rho_examples(self):
        assert d_rho(TM, splitvec("e1")) == splitvec("Dx")
        assert d_rho(TM, splitvec("Dx")).is_zero()
        assert d_rho(TM, splitvec("Dx*e2")) == splitvec("Dx*Dy")

    def test_d_rho_star_examples(self):
        assert d_rho_star(TM, split("dx*dy")) == split("E1*dy - E2*dx")
        assert d_rho_star(TM, split("E1")).is_zero()
        assert d_rho_star(TM, split("E1*dx")).is_zero()

    def test_wrong_frame(self):
        with pytest.raises(FrameMismatch):
            d_rho_star(TM, base("dx"))
        with pytest.raises(FrameMismatch):
            d_rho(TM, split("dx"))


class TestBOperators:
    theta = split("E1*dy - E2*dx")

    def test_degree_one_is_identity(self):
        th = split("x*E1 + E2")
        assert b_of_0k(TM, th) == th

    def test_degree_two(self):
        assert d_rho_star(TM, self.theta) == split("2*E1*E2")
        assert b_of_0k(TM, self.theta) == split("E1*dy - E2*dx + E1*E2")

    def test_zero(self):
        assert b_of_0k(TM, GradedElement.zero(TM.split_covectors, 2)).is_zero()

    def test_not_compatible(self):
        with pytest.raises(NotRhoCompatible):
            b_of_0k(TM, split("E1*dx"))

    def test_b_pi_degree_one_and_zero_anchor(self):
        pi1 = splitvec("Dy + x*e1", degree=1)
        with pytest.raises(NotRhoCompatible):
            b_of_k0(TM, pi1)
        pi = splitvec("Dx*e1", LIE)
        assert b_of_k0(LIE, pi) == pi

    def test_b_pi_one_derivation_term(self):
        # Dy (x) e1 with rho(e1) = Dx is not rho-compatible (pair (dx,dy) gives 1),
        # so B pi is refused; the series term itself is D_rho(Dy^e1) = Dy^Dx
        A = AlgebroidChart(TM.chart, 2, [[1, 0], [0, 0]])
        pi = splitvec("Dy*e1", A)
        assert not check_rho_compatible(A, pi, "k0").passed
        with pytest.raises(NotRhoCompatible):
            b_of_k0(A, pi)
        assert pi - d_rho(A, pi).mul(Fraction(1, 2)) == splitvec("Dy*e1 - 1/2*Dy*Dx", A)

    def test_b_pi_compatible_degree_two(self):
        pi = splitvec("Dx*e2 - Dy*e1")
        assert check_rho_compatible(TM, pi, "k0").passed
        assert b_of_k0(TM, pi) == splitvec("Dx*e2 - Dy*e1 - Dx*Dy")

    def test_b_pi_vector_field(self):
        pi = splitvec("x*Dy", degree=1)
        assert b_of_k0(TM, pi) == pi

    def test_contraction_and_block_properties(self):
        assert b_operator_suite(TM, self.theta).passed


class TestRhoCompatible:
    def test_canonical_counterexample(self):
        rep = check_rho_compatible(TM, split("E1*dx"))
        assert not rep.passed
        assert rep.failures()[0].witness["pair"] == "(e1,e1)"

    def test_zero(self):
        assert check_rho_compatible(TM, GradedElement.zero(TM.split_covectors, 2)).passed

    def test_two_bundle_factors_rejected(self):
        assert not check_rho_compatible(TM, split("E1*E2")).passed

    def test_k0_kind(self):
        assert check_rho_compatible(TM, splitvec("Dx*e2 - Dy*e1"), "k0").passed
        assert not check_rho_compatible(TM, splitvec("Dx*e1 + Dy*e2"), "k0").passed

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            check_rho_compatible(TM, split("E1"), "kk")


@settings(max_examples=20, deadline=None)
@given(seeds, fixture_index, st.integers(1, 3))
def test_image_of_d_rho_star_is_compatible(seed, i, k):
    _, A = FIXTURES[i]
    k = min(k, A.n)
    theta = d_rho_star(A, A.to_split(random_gamma(make_rng(seed), A, k)))
    assert check_rho_compatible(A, theta).passed
    mixed = random_element(make_rng(seed + 1), A.split_covectors, 2, density=0.4)
    assert lemma_formula_suite(A, theta, [mixed]).passed
    assert b_operator_suite(A, theta).passed


class TestDerivationChainSuite:
    def test_degree_two_example(self):
        rep = lemma_formula_suite(TM, split("E1*dy - E2*dx"))
        assert rep.passed
        assert any(c.check_id == "chain-left" for c in rep.checks)

    def test_degree_one_vacuous_chain(self):
        rep = lemma_formula_suite(TM, split("x*E1"))
        assert rep.passed
        assert not any(c.check_id.startswith("chain") for c in rep.checks)

    def test_corrupted_theta(self):
        rep = lemma_formula_suite(TM, split("E1*dy - E2*dx + E1*dx"))
        assert not rep.passed
        assert rep.failures()[0].witness


class TestCharacteristicPairs:
    def test_zero_pair(self):
        assert cp_check(zero_cp(TM, 1)).passed
        assert cp_to_im(zero_cp(TM, 2)).is_zero()

    def test_base_form_example(self):
        cp = cp_from_base_form(TM, base("x*dx*dy"))
        assert cp.theta == split("-x*E1*dy + x*E2*dx")
        assert cp.mu == (base("dx*dy"), GradedElement.zero(TM.base_forms, 2))
        assert cp_check(cp).passed

    def test_zero_anchor_kills_both(self):
        cp = cp_from_base_form(LIE, base("x*y*dx", LIE))
        assert cp.is_zero()

    def test_perturbed_mu_fails(self):
        cp = cp_from_base_form(TM, base("x*y*dx"))
        bad = CharacteristicPair(TM, 1, cp.theta, (cp.mu[0] + base("dx"), cp.mu[1]))
        assert not cp_check(bad).passed

    def test_perturbed_mu_two_form_fails(self):
        A = euclidean_action_plane()
        cp = cp_from_base_form(A, base("x*dx*dy", A))
        mu = (cp.mu[0] + base("dx*dy", A),) + cp.mu[1:]
        assert not cp_check(CharacteristicPair(A, 2, cp.theta, mu)).passed

    def test_degree_range(self):
        with pytest.raises(DegreeError):
            zero_cp(TM, 4)
        with pytest.raises(DegreeError):
            zero_cp(TM, 0)

    def test_base_form_to_im(self):
        gamma = base("y*dx")
        im = cp_to_im(cp_from_base_form(TM, gamma))
        # nu(e_a) = -iota_{rho(e_a)} d gamma
        assert im.nu == (base("dy"), base("-dx"))
        assert im_check(im).passed

    def test_cp_to_im_validates(self):
        cp = cp_from_base_form(TM, base("x*y*dx"))
        bad = CharacteristicPair(TM, 1, cp.theta, (cp.mu[0] + base("dx"), cp.mu[1]))
        with pytest.raises(ValidationFailure):
            cp_to_im(bad)


class TestIMForms:
    theta = split("-y*E1")

    def test_zero(self):
        assert im_check(zero_im(TM, 1)).passed

    def test_transitive_example(self):
        im = IMForm(TM, 1, self.theta, (base("dy"), base("-dx")))
        assert im_check(im).passed

    def test_listed_sign_is_a_negative_control(self):
        im = IMForm(TM, 1, self.theta, (base("-dy"), base("dx")))
        rep = im_check(im)
        assert not rep.passed
        bad = rep.failures()[0]
        assert bad.check_id == "axiom-2"
        assert not bad.witness["residual"].is_zero()

    def test_flipped_component_fails(self):
        im = IMForm(TM, 1, self.theta, (base("dy"), base("dx")))
        ids = {c.check_id for c in im_check(im).failures()}
        assert ids & {"axiom-2", "axiom-3"}

    def test_im_to_cp_validates(self):
        with pytest.raises(ValidationFailure):
            im_to_cp(IMForm(TM, 1, self.theta, (base("-dy"), base("dx"))))


@settings(max_examples=25, deadline=None)
@given(seeds, fixture_index, st.integers(1, 3))
def test_base_form_pairs_are_valid_and_round_trip(seed, i, k):
    _, A = FIXTURES[i]
    k = min(k, A.n + 1)
    cp = cp_from_base_form(A, random_gamma(make_rng(seed), A, k))
    assert cp_check(cp).passed
    im = cp_to_im(cp)
    assert im_check(im).passed
    assert im_to_cp(im) == cp
    assert cp_to_im(im_to_cp(im)) == im


class TestDifferentials:
    def test_zero_maps_to_zero(self):
        assert cp_differential(zero_cp(TM, 1)).is_zero()

    def test_cp_differential_of_closed_base_form(self):
        gamma = base("y*dx + x*dy")
        cp = cp_from_base_form(TM, gamma)
        d = cp_differential(cp)
        for a in range(TM.rank):
            u = TM.frame_section(a)
            expected = -de_rham_d(TM.theta_of(cp.theta, u)) - lie_derivative(TM.anchor_field(a), gamma)
            assert TM.theta_of(d.theta, u) == expected
        assert cp_check(d).passed

    def test_im_rule(self):
        im = cp_to_im(cp_from_base_form(TM, base("y*dx")))
        d = im_differential(im)
        assert all(v.is_zero() for v in d.nu)
        for a in range(TM.rank):
            assert TM.theta_of(d.theta, TM.frame_section(a)) == im.nu[a]
        assert im_differential(d).is_zero()

    def test_degree_zero_rule(self):
        x = PolyExpr.var(TM.chart, "x")
        c = [x, PolyExpr.const(TM.chart, 2)]
        im = im_coboundary(TM, c)
        assert all(v.is_zero() for v in im.nu)
        assert im.theta == split("-x*E1 - 2*E2")
        assert im_check(im).passed

    def test_top_degree_rejected(self):
        cp = cp_from_base_form(TM, base("x*dx*dy"))
        d = cp_differential(cp)
        assert d.k == 3
        with pytest.raises(DegreeError):
            cp_differential(d)


@settings(max_examples=15, deadline=None)
@given(seeds, fixture_index, st.integers(1, 2))
def test_differentials_square_to_zero(seed, i, k):
    _, A = FIXTURES[i]
    k = min(k, A.n)
    if k + 1 > A.n:
        k = max(1, A.n - 1)
    cp = cp_from_base_form(A, random_gamma(make_rng(seed), A, k))
    d = cp_differential(cp)
    assert cp_check(d).passed
    if d.k <= A.n:
        assert cp_differential(d).is_zero()
    im = cp_to_im(cp)
    d_im = im_differential(im)
    assert im_check(d_im).passed
    if d_im.k <= A.n:
        assert im_differential(d_im).is_zero()


class TestTransitiveReconstruction:
    sigma_id = [[1, 0], [0, 1]]

    def test_identity_anchor(self):
        theta = d_rho_star(TM, split("dx*dy"))
        assert transitive_reconstruct_gamma(TM, theta, self.sigma_id) == base("dx*dy")

    def test_zero(self):
        zero = GradedElement.zero(TM.split_covectors, 2)
        assert transitive_reconstruct_gamma(TM, zero, self.sigma_id).is_zero()

    def test_rank_three(self):
        A = euclidean_action_plane()
        sigma = [[1, 0, 0], [0, 1, 0]]
        theta = d_rho_star(A, A.to_split(base("x*dx*dy", A)))
        assert transitive_reconstruct_gamma(A, theta, sigma) == base("x*dx*dy", A)

    def test_not_right_inverse(self):
        with pytest.raises(NotRightInverse):
            transitive_reconstruct_gamma(TM, split("E1*dy"), [[0, 1], [1, 0]])

    def test_not_in_image(self):
        with pytest.raises(InconsistentTheta):
            transitive_reconstruct_gamma(TM, split("E1*dy"), self.sigma_id)

    def test_degree_one_rejected(self):
        with pytest.raises(DegreeError):
            transitive_reconstruct_gamma(TM, split("E1"), self.sigma_id)


@settings(max_examples=15, deadline=None)
@given(seeds, st.integers(0, 5), st.integers(2, 3))
def test_reconstruction_round_trip(seed, i, k):
    _, A, sigma = transitive_fixtures()[i]
    k = min(k, A.n)
    gamma = random_gamma(make_rng(seed), A, k)
    theta = d_rho_star(A, A.to_split(gamma))
    assert transitive_reconstruct_gamma(A, theta, sigma) == gamma
