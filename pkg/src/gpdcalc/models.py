"""The cotangent group bundle T*M => M with fiberwise addition.

Coordinates are (q, p) for n = 1 and (q1..qn, p1..pn) otherwise; the base M
uses x or x1..xn. Source and target are both the bundle projection, the
Lie algebroid is the vertical bundle with frame e_j = D p_j and zero anchor.
Because the frame orders are q-block then p-block on T*M and base block then
bundle block on the split frames of M, label index i on T*M corresponds to
label index i on the split frame.
"""

from dataclasses import dataclass

from .algebroid import AlgebroidChart, b_of_0k, b_of_k0
from .errors import FrameMismatch, NotInImage, NotMultiplicative, NotVertical
from .exterior import (
    COVECTOR,
    VECTOR,
    Frame,
    GradedElement,
    _acc,
    contract,
    koszul_bracket,
    pullback,
    wedge,
)
from .poly import Chart, PolyExpr, substitute


@dataclass(frozen=True)
class MultResult:
    ok: bool
    witness: str = ""

    def __bool__(self):
        return self.ok


class CotangentModel:
    def __init__(self, n=1):
        if n < 1:
            raise ValueError("base dimension must be at least 1")
        self.n = n
        if n == 1:
            self.q_names, self.p_names, self.x_names = ("q",), ("p",), ("x",)
        else:
            self.q_names = tuple(f"q{i}" for i in range(1, n + 1))
            self.p_names = tuple(f"p{i}" for i in range(1, n + 1))
            self.x_names = tuple(f"x{i}" for i in range(1, n + 1))
        self.chart = Chart(self.q_names + self.p_names)
        self.base_chart = Chart(self.x_names)
        self.forms = Frame(self.chart, COVECTOR)
        self.vectors = Frame(self.chart, VECTOR)
        self.base_forms = Frame(self.base_chart, COVECTOR)
        self.base_vectors = Frame(self.base_chart, VECTOR)
        zero_anchor = [[0] * n for _ in range(n)]
        self.algebroid = AlgebroidChart(self.base_chart, n, zero_anchor)

    def __repr__(self):
        return f"CotangentModel(n={self.n})"

    # -- coordinates -------------------------------------------------------

    def q(self, i=0):
        return PolyExpr.var(self.chart, self.q_names[i])

    def p(self, j=0):
        return PolyExpr.var(self.chart, self.p_names[j])

    def is_p_label(self, idx):
        return idx >= self.n

    def lift_function(self, f):
        """A function on M as a p-independent function on T*M."""
        if f.chart != self.base_chart:
            raise FrameMismatch("expected a function on the base")
        bindings = {x: PolyExpr.var(self.chart, q) for x, q in zip(self.x_names, self.q_names)}
        return substitute(f, bindings, self.chart)

    def restrict_function(self, f):
        """f restricted to p = 0, as a function on M."""
        bindings = {q: PolyExpr.var(self.base_chart, x) for x, q in zip(self.x_names, self.q_names)}
        bindings.update({p: PolyExpr.zero(self.base_chart) for p in self.p_names})
        return substitute(f, bindings, self.base_chart)

    def p_degrees(self, f):
        pidx = [self.chart.index(p) for p in self.p_names]
        return {sum(e[i] for i in pidx) for e in f.terms}


def _check_frame(obj, frame, what):
    if obj.frame != frame:
        raise FrameMismatch(f"{what} must live on {frame!r}")


def _classify(model, x, vertical_is_p):
    """Normal-form test shared by forms and multivectors.

    For forms the special direction is dp, for multivectors it is Dq.
    Components without it must be homogeneous linear in p, components with
    exactly one must be p-independent, and none may have two or more.
    """
    n = model.n
    for key in sorted(x.comps):
        f = x.comps[key]
        special = sum(1 for i in key if (i >= n) == vertical_is_p)
        degs = model.p_degrees(f)
        label = x.word_text(key) or "1"
        if special == 0 and degs != {1}:
            return MultResult(False, f"component {label} has coefficient {f}, not homogeneous linear in p")
        if special == 1 and degs != {0}:
            return MultResult(False, f"component {label} has coefficient {f}, which depends on p")
        if special >= 2:
            kind = "dp" if vertical_is_p else "Dq"
            return MultResult(False, f"component {label} has {special} {kind} factors")
    return MultResult(True)


def is_multiplicative_form(model, theta):
    _check_frame(theta, model.forms, "the form")
    return _classify(model, theta, vertical_is_p=True)


def is_multiplicative_multivector(model, pi):
    _check_frame(pi, model.vectors, "the multivector")
    return _classify(model, pi, vertical_is_p=False)


def pair_chart(model):
    """Chart of composable pairs (q, p', p'') of the group bundle."""
    if model.n == 1:
        first, second = ("pa",), ("pb",)
    else:
        first = tuple(f"pa{i}" for i in range(1, model.n + 1))
        second = tuple(f"pb{i}" for i in range(1, model.n + 1))
    return Chart(model.q_names + first + second), first, second


def multiplicativity_defect(model, theta):
    """m*Theta - pr1*Theta - pr2*Theta on the composable-pair chart."""
    _check_frame(theta, model.forms, "the form")
    chart2, first, second = pair_chart(model)
    frame2 = Frame(chart2, COVECTOR)
    qs = {q: PolyExpr.var(chart2, q) for q in model.q_names}

    def images(ps):
        out = dict(qs)
        for p, new in zip(model.p_names, ps):
            out[p] = new
        return out

    m = images([PolyExpr.var(chart2, a) + PolyExpr.var(chart2, b) for a, b in zip(first, second)])
    pr1 = images([PolyExpr.var(chart2, a) for a in first])
    pr2 = images([PolyExpr.var(chart2, b) for b in second])
    return pullback(theta, frame2, m) - pullback(theta, frame2, pr1) - pullback(theta, frame2, pr2)


def canonical_structures(model):
    """omega = sum dq^i ^ dp^i and P = sum Dq^i ^ Dp^i."""
    n = model.n
    omega = GradedElement.zero(model.forms, 2)
    P = GradedElement.zero(model.vectors, 2)
    for i in range(n):
        omega = omega + GradedElement.basis(model.forms, i, n + i)
        P = P + GradedElement.basis(model.vectors, i, n + i)
    return omega, P


def _substitute_labels(x, target, images):
    out = GradedElement.zero(target, x.degree)
    for key, f in x.comps.items():
        term = GradedElement.scalar(target, f)
        for i in key:
            term = wedge(term, images[i])
        out = out + term
    return out


def omega_sharp_iso(model, x, check=True):
    """Dp^i -> -dq^i, Dq^i -> dp^i on multivectors; the inverse on forms."""
    n = model.n
    if x.frame == model.vectors:
        if check:
            res = is_multiplicative_multivector(model, x)
            if not res:
                raise NotMultiplicative(res.witness)
        images = [GradedElement.basis(model.forms, n + i) for i in range(n)]
        images += [-GradedElement.basis(model.forms, i) for i in range(n)]
        return _substitute_labels(x, model.forms, images)
    if x.frame == model.forms:
        if check:
            res = is_multiplicative_form(model, x)
            if not res:
                raise NotMultiplicative(res.witness)
        images = [-GradedElement.basis(model.vectors, n + i) for i in range(n)]
        images += [GradedElement.basis(model.vectors, i) for i in range(n)]
        return _substitute_labels(x, model.vectors, images)
    raise FrameMismatch("expected a form or multivector on the model chart")


def restrict_to_base(model, x):
    """x|_M on the split frame of the vertical algebroid (dp -> E, Dp -> e)."""
    A = model.algebroid
    target = A.split_covectors if x.frame.kind == COVECTOR else A.split_vectors
    out = {}
    for key, f in x.comps.items():
        _acc(out, key, model.restrict_function(f))
    return GradedElement._raw(target, x.degree, out)


def leading_terms(model, x):
    """Leading term theta (forms) or pi (multivectors) of a multiplicative object.

    Also asserts that the restriction to M equals B theta (resp. B pi), which
    on this model is the leading term itself since the anchor vanishes.
    """
    A = model.algebroid
    if x.frame == model.forms:
        res = is_multiplicative_form(model, x)
        if not res:
            raise NotMultiplicative(res.witness)
        restricted = restrict_to_base(model, x)
        lead = restricted.block(1)
        assert restricted == lead, "restriction has components outside the leading block"
        if lead.degree >= 1:
            assert b_of_0k(A, lead) == restricted
        return lead
    if x.frame == model.vectors:
        res = is_multiplicative_multivector(model, x)
        if not res:
            raise NotMultiplicative(res.witness)
        restricted = restrict_to_base(model, x)
        lead = restricted.block(max(x.degree - 1, 0))
        assert restricted == lead, "restriction has components outside the leading block"
        if lead.degree >= 1:
            assert b_of_k0(A, lead) == restricted
        return lead
    raise FrameMismatch("expected a form or multivector on the model chart")


def s_pullback(model, gamma):
    """s* of a form on M: x^i -> q^i, dx^i -> dq^i."""
    _check_frame(gamma, model.base_forms, "gamma")
    return gamma.map_coeffs(model.lift_function, model.forms)


def t_pullback(model, gamma):
    """t = s on a group bundle."""
    return s_pullback(model, gamma)


def s_extract(model, theta):
    """Inverse of s_pullback on its image; NotInImage otherwise."""
    _check_frame(theta, model.forms, "the form")
    n = model.n
    for key, f in theta.comps.items():
        if any(i >= n for i in key):
            raise NotInImage(f"component {theta.word_text(key)} contains dp")
        if not f.free_of(model.p_names):
            raise NotInImage(f"component {theta.word_text(key)} depends on p")
    return theta.map_coeffs(model.restrict_function, model.base_forms)


def action_on_base(model, P, theta, gamma, check=True):
    """Theta |> gamma, defined by s*(Theta |> gamma) = [Theta, s*gamma]_P."""
    if check:
        res = is_multiplicative_form(model, theta)
        if not res:
            raise NotMultiplicative(res.witness)
    return s_extract(model, koszul_bracket(P, theta, s_pullback(model, gamma)))


def invariant_lift(model, u):
    """Left (= right) invariant extension of a section of wedge^k A."""
    A = model.algebroid
    if isinstance(u, (list, tuple)):
        u = A.section_element(list(u))
    if u.frame != A.split_vectors:
        raise FrameMismatch("sections of A live on the split vector frame")
    n = model.n
    for key in u.comps:
        if any(i < n for i in key):
            raise NotVertical(f"component {u.word_text(key)} has a base direction")
    return u.map_coeffs(model.lift_function, model.vectors)


def invariant_extract(model, X):
    """Inverse of invariant_lift on its image; NotInImage otherwise."""
    _check_frame(X, model.vectors, "the multivector")
    n = model.n
    for key, f in X.comps.items():
        if any(i < n for i in key):
            raise NotInImage(f"component {X.word_text(key)} has a Dq factor")
        if not f.free_of(model.p_names):
            raise NotInImage(f"component {X.word_text(key)} depends on p")
    return X.map_coeffs(model.restrict_function, model.algebroid.split_vectors)


def iota_base_form(model, gamma, pi):
    """iota_gamma pi for a 1-form gamma on M and pi on the split vector frame of A."""
    A = model.algebroid
    g = A.to_split(gamma)
    return contract(GradedElement._raw(A.split_covectors, 1, dict(g.comps)), pi)
