"""Lie bialgebras with rational structure constants.

c[i][j][k] = c^k_ij with [e_i, e_j] = sum_k c^k_ij e_k, and
delta[i][j][k] = delta^jk_i with delta(e_i) = 1/2 sum_jk delta^jk_i e_j ^ e_k.
Covectors are lists of m Fractions in the dual basis.
"""

from fractions import Fraction
from itertools import combinations

import sympy

from .errors import InvalidBialgebra
from .report import VerificationReport

A_JAC = "bialgebra/jacobi"
A_COJAC = "bialgebra/co-jacobi"
A_COCYCLE = "bialgebra/cocycle"
A_CLOSED = "bialgebra/invariant-closure"


def _zeros3(m):
    return [[[Fraction(0)] * m for _ in range(m)] for _ in range(m)]


class LieBialgebra:
    def __init__(self, m, brackets=None, cobrackets=None, name=""):
        """brackets: {(i, j): [c^1..c^m]} for i < j; cobrackets: {i: {(j, k): value}} for j < k."""
        self.m = m
        self.name = name
        self.c = _zeros3(m)
        self.delta = _zeros3(m)
        for (i, j), vals in (brackets or {}).items():
            if i == j:
                raise InvalidBialgebra("[e_i, e_i] must vanish")
            for k, v in enumerate(vals):
                self.c[i][j][k] = Fraction(v)
                self.c[j][i][k] = -Fraction(v)
        for i, table in (cobrackets or {}).items():
            for (j, k), v in table.items():
                if j == k:
                    raise InvalidBialgebra("cobracket components must be antisymmetric")
                self.delta[i][j][k] = Fraction(v)
                self.delta[i][k][j] = -Fraction(v)

    def bracket(self, x, y):
        m = self.m
        out = [Fraction(0)] * m
        for i in range(m):
            if not x[i]:
                continue
            for j in range(m):
                if not y[j]:
                    continue
                for k in range(m):
                    out[k] += x[i] * y[j] * self.c[i][j][k]
        return out

    def basis(self, i):
        v = [Fraction(0)] * self.m
        v[i] = Fraction(1)
        return v

    def cobracket(self, x):
        """delta(x) as a full antisymmetric m x m matrix t with delta(x) = 1/2 t^jk e_j ^ e_k."""
        m = self.m
        return [[sum(x[i] * self.delta[i][j][k] for i in range(m)) for k in range(m)] for j in range(m)]

    def ad_on_wedge2(self, x, t):
        """ad_x acting on an antisymmetric tensor t^jk."""
        m = self.m
        out = [[Fraction(0)] * m for _ in range(m)]
        adx = [self.bracket(x, self.basis(j)) for j in range(m)]
        for j in range(m):
            for k in range(m):
                if not t[j][k]:
                    continue
                for a in range(m):
                    out[a][k] += t[j][k] * adx[j][a]
                    out[j][a] += t[j][k] * adx[k][a]
        return out

    def __repr__(self):
        return f"LieBialgebra(dim={self.m}{', ' + self.name if self.name else ''})"


def dual_bracket(B, th1, th2):
    """[th1, th2]_*(u) = (th1 ^ th2)(delta u), i.e. sum_jk th1_j th2_k delta^jk_i."""
    m = B.m
    return [
        sum(th1[j] * th2[k] * B.delta[i][j][k] for j in range(m) for k in range(m))
        for i in range(m)
    ]


def pairing(th, u):
    return sum(a * b for a, b in zip(th, u))


def invariant_covectors(B):
    """Basis of {theta : theta([e_a, e_b]) = 0 for all a, b}, via an exact nullspace."""
    m = B.m
    rows = []
    for a, b in combinations(range(m), 2):
        rows.append([sympy.Rational(B.c[a][b][k].numerator, B.c[a][b][k].denominator) for k in range(m)])
    if not rows:
        return [B.basis(i) for i in range(m)]
    null = sympy.Matrix(rows).nullspace()
    basis = []
    for vec in null:
        basis.append([Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in vec])
    return basis


def in_span(vectors, target):
    if not any(target):
        return True
    if not vectors:
        return False
    M = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in v] for v in vectors])
    aug = M.col_join(sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in target]]))
    return aug.rank() == M.rank()


def bialgebra_suite(B):
    rep = VerificationReport(f"bialgebra{':' + B.name if B.name else ''}")
    m = B.m
    e = [B.basis(i) for i in range(m)]
    for i, j, k in combinations(range(m), 3):
        br = B.bracket
        jac = [
            x + y + z
            for x, y, z in zip(br(br(e[i], e[j]), e[k]), br(br(e[j], e[k]), e[i]), br(br(e[k], e[i]), e[j]))
        ]
        rep.add("jacobi", A_JAC, not any(jac), triple=(i + 1, j + 1, k + 1), residual=jac)
    f = [B.basis(i) for i in range(m)]
    for i, j, k in combinations(range(m), 3):
        db = lambda x, y: dual_bracket(B, x, y)  # noqa: E731
        jac = [
            x + y + z
            for x, y, z in zip(db(db(f[i], f[j]), f[k]), db(db(f[j], f[k]), f[i]), db(db(f[k], f[i]), f[j]))
        ]
        rep.add("co-jacobi", A_COJAC, not any(jac), triple=(i + 1, j + 1, k + 1), residual=jac)
    for i in range(m):
        for j in range(i + 1, m):
            lhs = B.cobracket(B.bracket(e[i], e[j]))
            a = B.ad_on_wedge2(e[i], B.cobracket(e[j]))
            b = B.ad_on_wedge2(e[j], B.cobracket(e[i]))
            residual = [[lhs[x][y] - a[x][y] + b[x][y] for y in range(m)] for x in range(m)]
            rep.add("cocycle", A_COCYCLE, not any(any(r) for r in residual), pair=(i + 1, j + 1), residual=residual)
    inv = invariant_covectors(B)
    for s, t in combinations(range(len(inv)), 2):
        br = dual_bracket(B, inv[s], inv[t])
        rep.add("invariant-closure", A_CLOSED, in_span(inv, br), pair=(inv[s], inv[t]), bracket=br)
    rep.note(f"invariant covectors: {len(inv)}-dimensional")
    return rep


def require_bialgebra(B):
    rep = bialgebra_suite(B)
    if not rep.passed:
        bad = rep.failures()[0]
        raise InvalidBialgebra(f"{bad.check_id} fails: {bad.witness}")
    return rep


def fixture_bialgebras():
    """Small Lie bialgebras used by the test suites."""
    return [
        LieBialgebra(2, name="abelian"),
        LieBialgebra(2, {(0, 1): [0, 1]}, name="affine-line"),
        LieBialgebra(2, cobrackets={0: {(0, 1): 1}}, name="dual-affine"),
        LieBialgebra(2, {(0, 1): [0, 1]}, {1: {(0, 1): 1}}, name="book"),
        LieBialgebra(
            3,
            {(0, 1): [0, 2, 0], (0, 2): [0, 0, -2], (1, 2): [1, 0, 0]},
            {1: {(1, 0): 1}, 2: {(2, 0): 1}},
            name="sl2-standard",
        ),
        LieBialgebra(3, {(0, 1): [0, 0, 1]}, {0: {(0, 2): 1}}, name="heisenberg"),
    ]
