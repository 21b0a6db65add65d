"""Algebroid fixtures with nonzero anchors.

The base fixtures are tangent bundles and action algebroids. Further
fixtures come from unipotent polynomial frame changes e'_a = e_a + sum_{b>a}
N_ab e_b of a base fixture, which keep everything polynomial because the
inverse of a unipotent triangular matrix is polynomial.
"""

from .algebroid import AlgebroidChart, validate_algebroid
from .errors import InvalidAlgebroid
from .poly import Chart, PolyExpr
from .sampling import make_rng, random_poly


def tangent_algebroid(names=("x", "y")):
    chart = Chart(names)
    n = len(names)
    return AlgebroidChart(chart, n, [[1 if i == a else 0 for i in range(n)] for a in range(n)])


def sl2_action_line():
    """sl2 acting on R by d/dx, x d/dx, x^2 d/dx."""
    chart = Chart(("x",))
    x = PolyExpr.var(chart, "x")
    anchor = [[1], [x], [x * x]]
    brackets = {(0, 1): [1, 0, 0], (0, 2): [0, 2, 0], (1, 2): [0, 0, 1]}
    return AlgebroidChart(chart, 3, anchor, brackets)


def affine_action_plane():
    """The affine algebra acting on R^2 by translation in x and dilation."""
    chart = Chart(("x", "y"))
    x, y = PolyExpr.var(chart, "x"), PolyExpr.var(chart, "y")
    return AlgebroidChart(chart, 2, [[1, 0], [x, y]], {(0, 1): [1, 0]})


def euclidean_action_plane():
    """Translations and rotations of R^2."""
    chart = Chart(("x", "y"))
    x, y = PolyExpr.var(chart, "x"), PolyExpr.var(chart, "y")
    return AlgebroidChart(chart, 3, [[1, 0], [0, 1], [-y, x]], {(0, 2): [0, 1, 0], (1, 2): [-1, 0, 0]})


def tangent_times_affine():
    """TR (x) plus the affine algebra with zero anchor, as a direct product."""
    chart = Chart(("x",))
    return AlgebroidChart(chart, 3, [[1], [0], [0]], {(1, 2): [0, 1, 0]})


def lie_bundle_plane():
    """Zero anchor, [e1, e2] = e1, over R^2 (valid, but anchor is zero)."""
    chart = Chart(("x", "y"))
    return AlgebroidChart(chart, 2, [[0, 0], [0, 0]], {(0, 1): [1, 0]})


def anchor_violating():
    """Identity anchor with a nonzero bracket: rho is not a bracket morphism."""
    chart = Chart(("x", "y"))
    return AlgebroidChart(chart, 2, [[1, 0], [0, 1]], {(0, 1): [1, 0]})


BASE_FIXTURES = {
    "tangent-plane": lambda: tangent_algebroid(("x", "y")),
    "tangent-space3": lambda: tangent_algebroid(("x", "y", "z")),
    "sl2-line": sl2_action_line,
    "affine-plane": affine_action_plane,
    "euclidean-plane": euclidean_action_plane,
    "tangent-x-affine": tangent_times_affine,
}


def _unipotent_inverse(G):
    """Inverse of an upper unitriangular matrix of polynomials."""
    r = len(G)
    chart = G[0][0].chart
    inv = [[PolyExpr.zero(chart) for _ in range(r)] for _ in range(r)]
    for c in range(r):
        inv[c][c] = PolyExpr.one(chart)
        for a in range(c - 1, -1, -1):
            acc = PolyExpr.zero(chart)
            for b in range(a + 1, c + 1):
                acc = acc + G[a][b] * inv[b][c]
            inv[a][c] = -acc
    return inv


def frame_change(A, G):
    """The same algebroid in the frame e'_a = sum_b G[a][b] e_b (G unitriangular)."""
    r = A.rank
    chart = A.chart
    Ginv = _unipotent_inverse(G)
    anchor = []
    for a in range(r):
        row = []
        for i in range(A.n):
            acc = PolyExpr.zero(chart)
            for b in range(r):
                acc = acc + G[a][b] * A.anchor[b][i]
            row.append(acc)
        anchor.append(row)
    brackets = {}
    for a in range(r):
        for b in range(a + 1, r):
            w = A.section_bracket(G[a], G[b])
            new = []
            for d in range(r):
                acc = PolyExpr.zero(chart)
                for c in range(r):
                    acc = acc + w[c] * Ginv[c][d]
                new.append(acc)
            brackets[(a, b)] = new
    return AlgebroidChart(chart, r, anchor, brackets)


def random_unipotent(rng, chart, r, max_degree=1):
    G = [[PolyExpr.zero(chart) for _ in range(r)] for _ in range(r)]
    for a in range(r):
        G[a][a] = PolyExpr.one(chart)
        for b in range(a + 1, r):
            G[a][b] = random_poly(rng, chart, max_degree=max_degree, max_terms=2)
    return G


def anchored_fixtures(count=20, seed=2024):
    """count valid algebroids with nonzero anchor, cycling through the base fixtures."""
    rng = make_rng(seed)
    names = list(BASE_FIXTURES)
    out = []
    i = 0
    while len(out) < count:
        name = names[i % len(names)]
        base = BASE_FIXTURES[name]()
        A = base if i < len(names) else frame_change(base, random_unipotent(rng, base.chart, base.rank))
        i += 1
        if not any(f for row in A.anchor for f in row):
            continue
        if not validate_algebroid(A).passed:
            raise InvalidAlgebroid(f"fixture {name} #{i} failed validation")
        out.append((f"{name}#{i}", A))
    return out


def _identity_sigma(n, r):
    return [[1 if a == i else 0 for a in range(r)] for i in range(n)]


def transitive_fixtures(seed=2025):
    """(name, A, sigma) with rho(sigma(Dx^i)) = Dx^i; frame changes use sigma' = sigma G^-1."""
    rng = make_rng(seed)
    bases = [
        ("tangent-plane", tangent_algebroid(("x", "y"))),
        ("tangent-space3", tangent_algebroid(("x", "y", "z"))),
        ("euclidean-plane", euclidean_action_plane()),
    ]
    out = []
    for name, A in bases:
        sigma = _identity_sigma(A.n, A.rank)
        out.append((name, A, sigma))
        G = random_unipotent(rng, A.chart, A.rank)
        Ginv = _unipotent_inverse(G)
        moved = []
        for i in range(A.n):
            row = []
            for b in range(A.rank):
                acc = PolyExpr.zero(A.chart)
                for a in range(A.rank):
                    if sigma[i][a]:
                        acc = acc + Ginv[a][b] * sigma[i][a]
                row.append(acc)
            moved.append(row)
        out.append((f"{name}-framed", frame_change(A, G), moved))
    return out
