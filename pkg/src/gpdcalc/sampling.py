"""Seeded random generators for polynomials, forms and multivectors.

All generators take a random.Random instance (Mersenne Twister), so a
fixed seed reproduces the same samples on every platform. Polynomials have
total degree <= max_degree and integer coefficients in [-coeff, coeff].
"""

import random
from contextlib import contextmanager
from itertools import combinations, combinations_with_replacement

from .exterior import COVECTOR, GradedElement, _acc
from .poly import PolyExpr

DEFAULT_MAX_DEGREE = 2
DEFAULT_COEFF = 3
_bounds = {"max_degree": DEFAULT_MAX_DEGREE, "coeff": DEFAULT_COEFF}


@contextmanager
def sample_bounds(max_degree=None, coeff=None):
    """Temporarily change the default degree and coefficient range of random polynomials."""
    saved = dict(_bounds)
    if max_degree is not None:
        _bounds["max_degree"] = int(max_degree)
    if coeff is not None:
        _bounds["coeff"] = int(coeff)
    try:
        yield
    finally:
        _bounds.update(saved)


def make_rng(seed):
    return random.Random(seed)


def _monomials(nvars, max_degree):
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(range(nvars), d):
            exps = [0] * nvars
            for i in combo:
                exps[i] += 1
            out.append(tuple(exps))
    return out


def random_poly(rng, chart, names=None, max_degree=None, coeff=None, max_terms=3):
    """Random polynomial in the given coordinates (default: all of the chart)."""
    max_degree = _bounds["max_degree"] if max_degree is None else max_degree
    coeff = _bounds["coeff"] if coeff is None else coeff
    names = tuple(chart.coordinates) if names is None else tuple(names)
    idx = [chart.index(x) for x in names]
    monos = _monomials(len(idx), max_degree)
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        mono = rng.choice(monos)
        c = rng.randint(-coeff, coeff)
        if not c:
            continue
        exps = [0] * len(chart.coordinates)
        for i, e in zip(idx, mono):
            exps[i] = e
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c
    return PolyExpr(chart, {k: v for k, v in terms.items() if v})


def random_element(rng, frame, degree, density=0.6, **poly_kw):
    """Random homogeneous element; each basis word is present with probability density."""
    out = {}
    if degree < 0:
        return GradedElement.zero(frame, degree)
    for key in combinations(range(len(frame)), degree):
        if rng.random() < density:
            _acc(out, key, random_poly(rng, frame.chart, **poly_kw))
    return GradedElement._raw(frame, degree, out)


def random_bivector(rng, frame, density=0.6, **poly_kw):
    return random_element(rng, frame, 2, density, **poly_kw)


def random_q_poly(rng, model, **poly_kw):
    return random_poly(rng, model.chart, model.q_names, **poly_kw)


def random_mult_form(rng, model, k, density=0.6, **poly_kw):
    """Random form in the linear normal form: p-linear dq-words plus dq^K ^ dp^a with q-only coefficients."""
    n = model.n
    out = {}
    if k == 0:
        f = PolyExpr.zero(model.chart)
        for j in range(n):
            if rng.random() < density:
                f = f + random_q_poly(rng, model, **poly_kw) * model.p(j)
        return GradedElement.scalar(model.forms, f)
    for word in combinations(range(n), k):
        for j in range(n):
            if rng.random() < density:
                _acc(out, word, random_q_poly(rng, model, **poly_kw) * model.p(j))
    for word in combinations(range(n), k - 1):
        for a in range(n):
            if rng.random() < density:
                _acc(out, word + (n + a,), random_q_poly(rng, model, **poly_kw))
    return GradedElement._raw(model.forms, k, out)


def random_mult_multivector(rng, model, k, density=0.6, **poly_kw):
    """Random multivector in the linear normal form: p-linear Dp-words plus Dq^j ^ Dp^I with q-only coefficients."""
    n = model.n
    out = {}
    if k == 0:
        f = PolyExpr.zero(model.chart)
        for j in range(n):
            if rng.random() < density:
                f = f + random_q_poly(rng, model, **poly_kw) * model.p(j)
        return GradedElement.scalar(model.vectors, f)
    for word in combinations(range(n, 2 * n), k):
        for j in range(n):
            if rng.random() < density:
                _acc(out, word, random_q_poly(rng, model, **poly_kw) * model.p(j))
    for word in combinations(range(n, 2 * n), k - 1):
        for j in range(n):
            if rng.random() < density:
                _acc(out, (j,) + word, random_q_poly(rng, model, **poly_kw))
    return GradedElement._raw(model.vectors, k, out)


def random_base_form(rng, model, l, density=0.7, **poly_kw):
    return random_element(rng, model.base_forms, l, density, **poly_kw)


def random_section(rng, algebroid, k, density=0.7, **poly_kw):
    """Random section of wedge^k A on the split vector frame (bundle labels only)."""
    A = algebroid
    frame = A.split_vectors
    n = frame.n_base
    out = {}
    for word in combinations(range(n, len(frame)), k):
        if rng.random() < density:
            _acc(out, word, random_poly(rng, frame.chart, **poly_kw))
    return GradedElement._raw(frame, k, out)


def random_covector_element(rng, frame, degree, **kw):
    if frame.kind != COVECTOR:
        raise ValueError("covector frame expected")
    return random_element(rng, frame, degree, **kw)
