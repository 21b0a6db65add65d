"""Closed-form brackets and actions of multiplicative forms on T*M.

These are literal transcriptions of hand-computed formulas, kept separate
from the generic Koszul machinery so the two can be compared. Indices are
0-based; a multi-index is a tuple of q-indices, s and t below are 1-based
positions inside it. Repeated indices are summed over 0..n-1.

Objects:
  linear 1-form      sum_ij T[i][j] p^j dq^i
  vertical 1-form    sum_l v[l] dp^l
  linear word form   sum_j T[j] p^j dq^I
  mixed word form    sum_a T[a] dq^K ^ dp^a
"""

from .exterior import GradedElement, wedge
from .poly import PolyExpr


def _dq(model, word):
    return GradedElement.basis(model.forms, *word)


def _dp(model, a):
    return GradedElement.basis(model.forms, model.n + a)


def _dx(model, word):
    return GradedElement.basis(model.base_forms, *word)


def _dq_diff(model, f, b):
    return f.diff(model.q_names[b])


def _drop(word, s):
    """word with its s-th entry (1-based) removed."""
    return word[: s - 1] + word[s:]


# -- objects -----------------------------------------------------------------


def linear_one_form(model, T):
    out = GradedElement.zero(model.forms, 1)
    for i in range(model.n):
        for j in range(model.n):
            out = out + _dq(model, (i,)).mul(T[i][j] * model.p(j))
    return out


def vertical_one_form(model, v):
    out = GradedElement.zero(model.forms, 1)
    for l in range(model.n):
        out = out + _dp(model, l).mul(v[l])
    return out


def base_one_form(model, g):
    out = GradedElement.zero(model.base_forms, 1)
    for k in range(model.n):
        out = out + _dx(model, (k,)).mul(g[k])
    return out


def linear_word_form(model, I, T):
    out = GradedElement.zero(model.forms, len(I))
    for j in range(model.n):
        out = out + _dq(model, I).mul(T[j] * model.p(j))
    return out


def mixed_word_form(model, K, T):
    out = GradedElement.zero(model.forms, len(K) + 1)
    for a in range(model.n):
        out = out + wedge(_dq(model, K), _dp(model, a)).mul(T[a])
    return out


def base_word_form(model, L, g):
    return _dx(model, L).mul(g)


# -- 1-form lines ------------------------------------------------------------


def one_form_linear_linear(model, T, Tp):
    """[T_ij p^j dq^i, T'_ab p^b dq^a] = T_ij T'_ai p^j dq^a - T'_ab T_ia p^b dq^i."""
    n = model.n
    out = GradedElement.zero(model.forms, 1)
    for i in range(n):
        for j in range(n):
            for a in range(n):
                out = out + _dq(model, (a,)).mul(T[i][j] * Tp[a][i] * model.p(j))
    for a in range(n):
        for b in range(n):
            for i in range(n):
                out = out - _dq(model, (i,)).mul(Tp[a][b] * T[i][a] * model.p(b))
    return out


def one_form_linear_vertical(model, T, vp):
    """[T_ij p^j dq^i, v'_l dp^l] = v'_l dT_ij/dq^l p^j dq^i."""
    n = model.n
    out = GradedElement.zero(model.forms, 1)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                out = out + _dq(model, (i,)).mul(vp[l] * _dq_diff(model, T[i][j], l) * model.p(j))
    return out


def one_form_vertical_vertical(model, v, vp):
    """[v_k dp^k, v'_l dp^l] = -v_k dv'_l/dq^k dp^l + v'_l dv_k/dq^l dp^k."""
    n = model.n
    out = GradedElement.zero(model.forms, 1)
    for k in range(n):
        for l in range(n):
            out = out - _dp(model, l).mul(v[k] * _dq_diff(model, vp[l], k))
            out = out + _dp(model, k).mul(vp[l] * _dq_diff(model, v[k], l))
    return out


def one_form_action(model, T, v, g):
    """(T_ij p^j dq^i + v_l dp^l) |> g_k dx^k = -g_k T_ik dx^i - v_l dg_k/dx^l dx^k, on M."""
    n = model.n
    out = GradedElement.zero(model.base_forms, 1)
    for i in range(n):
        for k in range(n):
            out = out - _dx(model, (i,)).mul(g[k] * model.restrict_function(T[i][k]))
    for l in range(n):
        for k in range(n):
            out = out - _dx(model, (k,)).mul(model.restrict_function(v[l]) * g[k].diff(model.x_names[l]))
    return out


# -- multi-index lines -------------------------------------------------------


def word_linear_linear(model, I, T, A, Tp, corrected=False):
    """[T_Ij p^j dq^I, T'_Ab p^b dq^A]
    = (-1)^(k-s) T_Ij T'_{A,i_s} p^j dq^{I_s} ^ dq^A - (-1)^(l-t) T'_Ab T_{I,a_t} p^b dq^{A_t} ^ dq^I.

    corrected=True multiplies the second term by (-1)^((k-1)(l-1)), the
    graded antisymmetry sign; the two differ only when k and l are both even.
    """
    n, k, l = model.n, len(I), len(A)
    swap = (-1) ** ((k - 1) * (l - 1)) if corrected else 1
    out = GradedElement.zero(model.forms, k + l - 1)
    for s in range(1, k + 1):
        base = wedge(_dq(model, _drop(I, s)), _dq(model, A))
        for j in range(n):
            out = out + base.mul(T[j] * Tp[I[s - 1]] * model.p(j)).mul((-1) ** (k - s))
    for t in range(1, l + 1):
        base = wedge(_dq(model, _drop(A, t)), _dq(model, I))
        for b in range(n):
            out = out - base.mul(Tp[b] * T[A[t - 1]] * model.p(b)).mul(swap * (-1) ** (l - t))
    return out


def word_linear_mixed(model, I, T, L, Tp, corrected=False):
    """[T_Ij p^j dq^I, T'_Lb dq^L ^ dp^b]
    = (-1)^(l-s) T'_Lb T_{I,l_s} dq^{L_s} ^ dp^b ^ dq^I - T'_Lb dT_Ij/dq^b p^j dq^L ^ dq^I, with l = |L|.

    corrected=True flips the sign of the second term, which is what the
    1-form case (L empty) reduces to, and multiplies the whole line by
    (-1)^((|I|-1)|L|); both are needed to match the Koszul bracket.
    """
    n, l = model.n, len(L)
    out = GradedElement.zero(model.forms, len(I) + l)
    for s in range(1, l + 1):
        for b in range(n):
            term = wedge(wedge(_dq(model, _drop(L, s)), _dp(model, b)), _dq(model, I))
            out = out + term.mul(Tp[b] * T[L[s - 1]]).mul((-1) ** (l - s))
    dqLI = wedge(_dq(model, L), _dq(model, I))
    sign = 1 if corrected else -1
    for b in range(n):
        for j in range(n):
            out = out + dqLI.mul(Tp[b] * _dq_diff(model, T[j], b) * model.p(j)).mul(sign)
    if corrected and (len(I) - 1) * l % 2:
        out = -out
    return out


def word_mixed_mixed(model, K, T, L, Tp, corrected=False):
    """[T_Ka dq^K ^ dp^a, T'_Lb dq^L ^ dp^b]
    = -T_Ka dT'_Lb/dq^a dq^K ^ dq^L ^ dp^b + T'_Lb dT_Ka/dp^b dq^L ^ dq^K ^ dp^a.

    As written the second term vanishes, since the coefficients depend on q
    only. corrected=True differentiates by q^b instead and multiplies the
    second term by (-1)^(|K||L|), which matches the Koszul bracket.
    """
    n = model.n
    sign = (-1) ** (len(K) * len(L)) if corrected else 1
    out = GradedElement.zero(model.forms, len(K) + len(L) + 1)
    for a in range(n):
        for b in range(n):
            term = wedge(wedge(_dq(model, K), _dq(model, L)), _dp(model, b))
            out = out - term.mul(T[a] * _dq_diff(model, Tp[b], a))
            var = model.q_names[b] if corrected else model.p_names[b]
            term = wedge(wedge(_dq(model, L), _dq(model, K)), _dp(model, a))
            out = out + term.mul(Tp[b] * T[a].diff(var)).mul(sign)
    return out


def word_action(model, I, T, K, U, L, g, corrected=False):
    """(T_Ij p^j dq^I + U_Ka dq^K ^ dp^a) |> g_L dx^L
    = -(-1)^(l-s) g_L T_{I,l_s} dx^{L_s} ^ dx^I - U_Ka dg_L/dx^a dx^K ^ dx^L, on M.

    corrected=True multiplies the first term by (-1)^((|I|-1)(l-1)), the
    same graded antisymmetry sign as in word_linear_linear.
    """
    n, l = model.n, len(L)
    swap = (-1) ** ((len(I) - 1) * (l - 1)) if corrected and I else 1
    rf = model.restrict_function
    out = GradedElement.zero(model.base_forms, len(I) + l - 1)
    for s in range(1, l + 1):
        term = wedge(_dx(model, _drop(L, s)), _dx(model, I))
        out = out - term.mul(g * rf(T[L[s - 1]])).mul(swap * (-1) ** (l - s))
    dxKL = wedge(_dx(model, K), _dx(model, L))
    for a in range(n):
        out = out - dxKL.mul(rf(U[a]) * g.diff(model.x_names[a]))
    return out


def zero_coeffs(model):
    return [PolyExpr.zero(model.chart) for _ in range(model.n)]
