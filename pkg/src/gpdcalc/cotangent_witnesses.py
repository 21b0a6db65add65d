"""Crossed-module witnesses built from the cotangent group bundle T*M.

Forms:       Omega(M) --J--> multiplicative forms, J = s* - t* = 0,
             action determined by s*(Theta |> gamma) = [Theta, s*gamma]_P.
Multivectors: Gamma(wedge A) --T--> multiplicative multivectors, T = 0,
             action determined by lift(X |> u) = [X, lift u].
"""

from .crossed import CrossedModuleMorphism, CrossedModuleWitness
from .errors import NotInImage
from .exterior import (
    GradedElement,
    de_rham_d,
    koszul_bracket,
    schouten_bracket,
    wedge_power_psharp,
)
from .models import (
    canonical_structures,
    invariant_extract,
    invariant_lift,
    is_multiplicative_form,
    is_multiplicative_multivector,
    restrict_to_base,
    s_extract,
    s_pullback,
)
from .sampling import random_base_form, random_mult_form, random_mult_multivector, random_section

A_LIFT = "tstar/action-lift"
A_CLOSE_BR = "tstar/closure-bracket"
A_CLOSE_D = "tstar/closure-d"


def _upper_range(model):
    return min(3, model.n + 1)


def induced_base_bivector(model, P):
    """s_* P: the Dq ^ Dq block of P restricted to p = 0 (P is assumed multiplicative)."""
    n = model.n
    comps = {}
    for key, f in P.comps.items():
        if all(i < n for i in key):
            g = model.restrict_function(f)
            if g:
                comps[key] = g
    return GradedElement._raw(model.base_vectors, 2, comps)


def form_action(model, P, sign=1):
    def act(theta, gamma):
        out = s_extract(model, koszul_bracket(P, theta, s_pullback(model, gamma)))
        return out if sign == 1 else -out

    return act


def form_witness(model, sign=1, name=None):
    """Omega(M) -> Omega_mult(T*M). sign=-1 flips the action (negative control)."""
    _, P = canonical_structures(model)
    PM = induced_base_bivector(model, P)
    act = form_action(model, P, sign)
    top = _upper_range(model)

    def sample_lower(rng):
        return random_base_form(rng, model, rng.randint(0, model.n))

    def sample_upper(rng):
        return random_mult_form(rng, model, rng.randint(1, top))

    def phi(gamma):
        return s_pullback(model, gamma) - s_pullback(model, gamma)

    def lift_residual(theta, gamma):
        return s_pullback(model, act(theta, gamma)) - koszul_bracket(P, theta, s_pullback(model, gamma))

    def closure(x, y):
        br = is_multiplicative_form(model, koszul_bracket(P, x, y))
        dx = is_multiplicative_form(model, de_rham_d(x))
        ok = bool(br) and bool(dx)
        return ok, ({} if ok else {"x": x, "y": y, "bracket": br.witness, "d": dx.witness})

    return CrossedModuleWitness(
        name=name or f"tstar-forms-n{model.n}" + ("" if sign == 1 else "-flipped"),
        sample_lower=sample_lower,
        sample_upper=sample_upper,
        phi=phi,
        lower_bracket=lambda u, v: koszul_bracket(PM, u, v),
        upper_bracket=lambda x, y: koszul_bracket(P, x, y),
        action=act,
        lower_d=de_rham_d,
        upper_d=de_rham_d,
        pair_checks=[("action-lift", A_LIFT, lift_residual)],
        upper_checks=[("closure", A_CLOSE_BR, closure)],
        notes=["J = s* - t* vanishes identically since s = t on a group bundle"],
    )


def multivector_witness(model, sign=1, name=None):
    """Gamma(wedge A) -> X_mult(T*M) with the Schouten bracket and d = [P, .]."""
    _, P = canonical_structures(model)
    A = model.algebroid
    top = _upper_range(model)

    def extract(X):
        return invariant_extract(model, X)

    def act(X, u):
        out = extract(schouten_bracket(X, invariant_lift(model, u)))
        return out if sign == 1 else -out

    def sample_lower(rng):
        return random_section(rng, A, rng.randint(0, model.n))

    def sample_upper(rng):
        return random_mult_multivector(rng, model, rng.randint(1, top))

    def lift_residual(X, u):
        return invariant_lift(model, act(X, u)) - schouten_bracket(X, invariant_lift(model, u))

    def closure(x, y):
        br = is_multiplicative_multivector(model, schouten_bracket(x, y))
        return bool(br), ({} if br else {"x": x, "y": y, "bracket": br.witness})

    return CrossedModuleWitness(
        name=name or f"tstar-multivectors-n{model.n}" + ("" if sign == 1 else "-flipped"),
        sample_lower=sample_lower,
        sample_upper=sample_upper,
        phi=lambda u: GradedElement.zero(model.vectors, u.degree),
        lower_bracket=lambda u, v: extract(schouten_bracket(invariant_lift(model, u), invariant_lift(model, v))),
        upper_bracket=schouten_bracket,
        action=act,
        lower_d=lambda u: extract(schouten_bracket(P, invariant_lift(model, u))),
        upper_d=lambda X: schouten_bracket(P, X),
        pair_checks=[("action-lift", A_LIFT, lift_residual)],
        upper_checks=[("closure", A_CLOSE_BR, closure)],
        notes=["T = left - right invariant lift vanishes on an abelian group bundle"],
    )


def upper_sharp(model, P, convention="literal"):
    """Wedge power of P# on forms; degree 0 is the identity on functions.

    convention "literal" uses the (-1)^k evaluation rule; "graded" multiplies
    degree k by (-1)^(k(k-1)/2), the twist under which the map is a DGLA
    morphism for the bracket conventions used here; "unsigned" drops the
    (-1)^k (negative control).
    """

    def F(theta):
        k = theta.degree
        if k <= 0:
            return GradedElement._raw(model.vectors, k, dict(theta.comps))
        out = wedge_power_psharp(P, theta)
        if convention == "graded" and (k * (k - 1) // 2) % 2:
            out = -out
        elif convention == "unsigned" and k % 2:
            out = -out
        return out

    return F


def lower_sharp(model, P, convention="literal"):
    """Wedge power of p# for the leading term p of P, computed on M by restriction."""
    A = model.algebroid
    p_lead = restrict_to_base(model, P)

    def f(gamma):
        k = gamma.degree
        if k <= 0:
            return GradedElement._raw(A.split_vectors, k, dict(gamma.comps))
        out = wedge_power_psharp(p_lead, A.to_split(gamma))
        if convention == "graded" and (k * (k - 1) // 2) % 2:
            out = -out
        elif convention == "unsigned" and k % 2:
            out = -out
        if any(i < model.n for key in out.comps for i in key):
            raise NotInImage("wedge power of p# left the bundle directions")
        return out

    return f


def sharp_morphism(model, convention="literal"):
    _, P = canonical_structures(model)
    return CrossedModuleMorphism(
        name=f"wedge-sharp-{convention}-n{model.n}",
        source=form_witness(model),
        target=multivector_witness(model),
        lower_map=lower_sharp(model, P, convention),
        upper_map=upper_sharp(model, P, convention),
    )
