"""Residuals of the standard identities of Koszul and Schouten calculus.

Every function returns lhs - rhs as a GradedElement; an identity holds on
the given inputs iff the residual is zero. Graded Lie degrees are shifted:
a k-form or k-vector has degree k - 1.
"""

from fractions import Fraction
from itertools import combinations

from .exterior import (
    GradedElement,
    contract,
    contract_psharp,
    de_rham_d,
    koszul_bracket,
    koszul_bracket_oracle,
    lie_derivative,
    psharp_1form,
    schouten_bracket,
)

HALF = Fraction(1, 2)


def _sign(e):
    return -1 if e % 2 else 1


def pp_on(P, *alphas):
    """[P,P](a1, .., am, .) = iota_am .. iota_a1 [P,P]."""
    out = schouten_bracket(P, P)
    for a in alphas:
        out = contract(a, out)
    return out


def dd_residual(w):
    return de_rham_d(de_rham_d(w))


def schouten_antisymmetry_residual(a, b):
    s = _sign((a.degree - 1) * (b.degree - 1))
    return schouten_bracket(a, b) + schouten_bracket(b, a).mul(s)


def schouten_jacobi_residual(a, b, c):
    """[a,[b,c]] - [[a,b],c] - (-1)^(|a||b|) [b,[a,c]]."""
    s = _sign((a.degree - 1) * (b.degree - 1))
    S = schouten_bracket
    return S(a, S(b, c)) - S(S(a, b), c) - S(b, S(a, c)).mul(s)


def koszul_antisymmetry_residual(P, a, b):
    s = _sign((a.degree - 1) * (b.degree - 1))
    return koszul_bracket(P, a, b) + koszul_bracket(P, b, a).mul(s)


def koszul_jacobi_residual(P, a, b, c):
    s = _sign((a.degree - 1) * (b.degree - 1))

    def K(x, y):
        return koszul_bracket(P, x, y)

    return K(a, K(b, c)) - K(K(a, b), c) - K(b, K(a, c)).mul(s)


def oracle_residual(P, a, b):
    return koszul_bracket(P, a, b) - koszul_bracket_oracle(P, a, b)


def dgla_residual(P, a, b):
    """d[a,b]_P - [da,b]_P - (-1)^(k-1) [a,db]_P."""
    k = a.degree
    d = de_rham_d
    return d(koszul_bracket(P, a, b)) - koszul_bracket(P, d(a), b) - koszul_bracket(P, a, d(b)).mul(_sign(k - 1))


def sharp_residual(P, a1, a2):
    """P#[a1,a2]_P - [P#a1, P#a2] - 1/2 [P,P](a1,a2)."""
    lhs = psharp_1form(P, koszul_bracket(P, a1, a2)) - schouten_bracket(psharp_1form(P, a1), psharp_1form(P, a2))
    return lhs - pp_on(P, a1, a2).mul(HALF)


def jacobiator_residual(P, a1, a2, a3):
    """Cyclic Jacobiator of 1-forms minus (-1/2 L_{[P,P](ai,aj,.)} ak + c.p. + d [P,P](a1,a2,a3))."""

    def K(x, y):
        return koszul_bracket(P, x, y)

    lhs = K(a1, K(a2, a3)) + K(a2, K(a3, a1)) + K(a3, K(a1, a2))
    rhs = GradedElement.zero(a1.frame, 1)
    for x, y, z in ((a1, a2, a3), (a2, a3, a1), (a3, a1, a2)):
        rhs = rhs + lie_derivative(pp_on(P, x, y), z).mul(-HALF)
    scalar = pp_on(P, a1, a2, a3)
    f = scalar.comps.get(())
    if f is not None:
        rhs = rhs + de_rham_d(GradedElement.scalar(a1.frame, f))
    return lhs - rhs


def _partial(w, vectors):
    """w(X1, .., Xm, .) as a form: contract the first slots in order."""
    for X in vectors:
        w = contract(X, w)
    return w


def _shuffles(p, q):
    """(permutation, sign) for the (p, q)-shuffles of range(p + q)."""
    n = p + q
    out = []
    for head in combinations(range(n), p):
        tail = [i for i in range(n) if i not in head]
        perm = list(head) + tail
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append((perm, _sign(inversions)))
    return out


def sharp_shuffle_residual(P, a, b, second_sign=1):
    """Largest residual of the shuffle expansion of (iota_{P#a} b)# over frame tuples.

    The expansion is
        sum_{Sh(k-1,l-2)} sgn b#(P# a#(X..), X..)
        + second_sign (-1)^(kl) sum_{Sh(l-1,k-2)} sgn a#(P# b#(X..), X..),
    and the function returns the first nonzero 1-form residual, or zero.
    """
    k, l = a.degree, b.degree
    m = k + l - 3
    lhs_form = contract_psharp(P, a, b)
    frame = P.frame
    basis = [GradedElement.basis(frame, i) for i in range(len(frame))]
    zero = GradedElement.zero(a.frame, 1)
    for idx in combinations(range(len(frame)), m):
        X = [basis[i] for i in idx]
        lhs = _partial(lhs_form, X)
        rhs = zero
        if l >= 2:
            for perm, s in _shuffles(k - 1, l - 2):
                Y = [X[i] for i in perm]
                v = psharp_1form(P, _partial(a, Y[: k - 1]))
                rhs = rhs + _partial(b, [v] + Y[k - 1:]).mul(s)
        if k >= 2:
            for perm, s in _shuffles(l - 1, k - 2):
                Y = [X[i] for i in perm]
                v = psharp_1form(P, _partial(b, Y[: l - 1]))
                rhs = rhs + _partial(a, [v] + Y[l - 1:]).mul(s * second_sign * _sign(k * l))
        if lhs != rhs:
            return lhs - rhs
    return zero
