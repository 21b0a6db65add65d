"""Randomized axiom checker for graded (differential) Lie algebra crossed modules.

A witness bundles a lower algebra, an upper algebra, a map phi between them,
an action of the upper algebra on the lower one and optional differentials.
Elements are GradedElements; the graded Lie degree of an element of form or
multivector degree k is k - 1.

Every check is an exact zero test on a residual. All identities checked here
are polynomial in the coefficients of the samples, so a zero residual on
samples whose coefficients have degree above the residual's degree bound is
a proof for that degree class; the bound is recorded as a report note.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

from .report import VerificationReport
from .sampling import make_rng

A_AX1 = "crossed/axiom-1"
A_AX2 = "crossed/axiom-2"
A_DER = "crossed/action-derivation"
A_REP = "crossed/action-representation"
A_PHI = "crossed/phi-morphism"
A_PHID = "crossed/phi-cochain"
A_DCOMP = "crossed/d-compatibility"
A_SQUARE = "morphism/square"
A_FBR = "morphism/upper-bracket"
A_FD = "morphism/upper-cochain"
A_LBR = "morphism/lower-bracket"
A_LD = "morphism/lower-cochain"
A_INTER = "morphism/intertwining"

DEGREE_BOUND_NOTE = (
    "degree bound: each residual is at most cubic in sample coefficients "
    "(quadratic for axiom-1, axiom-2, phi checks); samples carry coefficients of degree <= 2"
)


def grade(x):
    return x.degree - 1


def _sign(e):
    return -1 if e % 2 else 1


@dataclass
class CrossedModuleWitness:
    name: str
    sample_lower: Callable  # rng -> element
    sample_upper: Callable  # rng -> element
    phi: Callable
    lower_bracket: Callable
    upper_bracket: Callable
    action: Callable
    lower_d: Optional[Callable] = None
    upper_d: Optional[Callable] = None
    # (check_id, anchor, fn(x, u) -> residual) evaluated on each sampled pair
    pair_checks: list = field(default_factory=list)
    # (check_id, anchor, fn(x, y) -> (ok, witness dict)) on pairs of upper samples
    upper_checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)


def _zero_check(rep, check_id, anchor, residual, **inputs):
    rep.expect_zero(check_id, anchor, residual, **{k: str(v) for k, v in inputs.items()})


def check_crossed_module(w, trials=50, seed=0):
    rng = make_rng(seed)
    rep = VerificationReport(f"crossed-module:{w.name}")
    act, lb, ub, phi = w.action, w.lower_bracket, w.upper_bracket, w.phi
    for _ in range(trials):
        u, v = w.sample_lower(rng), w.sample_lower(rng)
        x, y = w.sample_upper(rng), w.sample_upper(rng)
        gx, gy, gu = grade(x), grade(y), grade(u)

        _zero_check(rep, "axiom-1", A_AX1, act(phi(u), v) - lb(u, v), u=u, v=v)
        _zero_check(rep, "axiom-2", A_AX2, phi(act(x, u)) - ub(x, phi(u)), x=x, u=u)
        res = act(x, lb(u, v)) - lb(act(x, u), v) - lb(u, act(x, v)).mul(_sign(gx * gu))
        _zero_check(rep, "action-derivation", A_DER, res, x=x, u=u, v=v)
        res = act(ub(x, y), u) - act(x, act(y, u)) + act(y, act(x, u)).mul(_sign(gx * gy))
        _zero_check(rep, "action-representation", A_REP, res, x=x, y=y, u=u)
        _zero_check(rep, "phi-morphism", A_PHI, phi(lb(u, v)) - ub(phi(u), phi(v)), u=u, v=v)
        if w.lower_d is not None and w.upper_d is not None:
            _zero_check(rep, "phi-cochain", A_PHID, phi(w.lower_d(u)) - w.upper_d(phi(u)), u=u)
            res = w.lower_d(act(x, u)) - act(w.upper_d(x), u) - act(x, w.lower_d(u)).mul(_sign(gx))
            _zero_check(rep, "d-compatibility", A_DCOMP, res, x=x, u=u)
        for check_id, anchor, fn in w.pair_checks:
            _zero_check(rep, check_id, anchor, fn(x, u), x=x, u=u)
        for check_id, anchor, fn in w.upper_checks:
            ok, witness = fn(x, y)
            rep.add(check_id, anchor, ok, **witness)
    rep.note(DEGREE_BOUND_NOTE)
    for n in w.notes:
        rep.note(n)
    return rep


@dataclass
class CrossedModuleMorphism:
    name: str
    source: CrossedModuleWitness
    target: CrossedModuleWitness
    lower_map: Callable
    upper_map: Callable


def check_morphism(m, trials=50, seed=0):
    """Square commutes, both maps are bracket morphisms and cochain maps, actions intertwine."""
    rng = make_rng(seed)
    src, tgt = m.source, m.target
    f, F = m.lower_map, m.upper_map
    rep = VerificationReport(f"morphism:{m.name}")
    for _ in range(trials):
        u, v = src.sample_lower(rng), src.sample_lower(rng)
        x, y = src.sample_upper(rng), src.sample_upper(rng)
        _zero_check(rep, "square", A_SQUARE, F(src.phi(u)) - tgt.phi(f(u)), u=u)
        _zero_check(rep, "upper-bracket", A_FBR, F(src.upper_bracket(x, y)) - tgt.upper_bracket(F(x), F(y)), x=x, y=y)
        _zero_check(rep, "lower-bracket", A_LBR, f(src.lower_bracket(u, v)) - tgt.lower_bracket(f(u), f(v)), u=u, v=v)
        if src.upper_d is not None and tgt.upper_d is not None:
            _zero_check(rep, "upper-cochain", A_FD, F(src.upper_d(x)) - tgt.upper_d(F(x)), x=x)
        if src.lower_d is not None and tgt.lower_d is not None:
            _zero_check(rep, "lower-cochain", A_LD, f(src.lower_d(u)) - tgt.lower_d(f(u)), u=u)
        _zero_check(rep, "intertwining", A_INTER, f(src.action(x, u)) - tgt.action(F(x), f(u)), x=x, u=u)
    rep.note(DEGREE_BOUND_NOTE)
    return rep


def identity_morphism(w):
    ident = lambda a: a  # noqa: E731
    return CrossedModuleMorphism(f"identity:{w.name}", w, w, ident, ident)
