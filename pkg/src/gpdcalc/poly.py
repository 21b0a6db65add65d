"""Exact multivariate polynomials over named chart coordinates."""

from fractions import Fraction
from numbers import Rational

from .errors import ChartMismatch, UnknownCoordinate
from .syntax import evaluate_ast, format_fraction, format_terms, parse_ast


class Chart:
    """An ordered tuple of distinct coordinate names."""

    __slots__ = ("coordinates", "_index")

    def __init__(self, coordinates):
        coords = tuple(coordinates)
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        for c in coords:
            if not c or not (c[0].isalpha() or c[0] == "_") or not c.replace("_", "a").isalnum():
                raise ValueError(f"invalid coordinate name {c!r}")
        self.coordinates = coords
        self._index = {c: i for i, c in enumerate(coords)}

    def __len__(self):
        return len(self.coordinates)

    def __iter__(self):
        return iter(self.coordinates)

    def __contains__(self, name):
        return name in self._index

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise UnknownCoordinate(name) from None

    def __eq__(self, other):
        return isinstance(other, Chart) and self.coordinates == other.coordinates

    def __hash__(self):
        return hash(self.coordinates)

    def __repr__(self):
        return f"Chart({', '.join(self.coordinates)})"


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"exact rational expected, got {type(c).__name__}")


class PolyExpr:
    """Polynomial with Fraction coefficients; terms maps exponent tuples to coefficients.

    Instances are treated as immutable. No zero coefficient is ever stored, so
    equality of term maps is equality of polynomials.
    """

    __slots__ = ("chart", "terms", "_hash")

    def __init__(self, chart, terms=None):
        self.chart = chart
        clean = {}
        if terms:
            n = len(chart)
            for exp, c in terms.items():
                if len(exp) != n:
                    raise ValueError("exponent vector length does not match chart")
                c = _as_fraction(c)
                if c:
                    clean[tuple(exp)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, chart, terms):
        obj = cls.__new__(cls)
        obj.chart = chart
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, chart, c):
        c = _as_fraction(c)
        return cls._raw(chart, {(0,) * len(chart): c} if c else {})

    @classmethod
    def zero(cls, chart):
        return cls._raw(chart, {})

    @classmethod
    def one(cls, chart):
        return cls.const(chart, 1)

    @classmethod
    def var(cls, chart, name, power=1):
        i = chart.index(name)
        exp = [0] * len(chart)
        exp[i] = power
        return cls._raw(chart, {tuple(exp): Fraction(1)})

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.chart), Fraction(0))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name):
        i = self.chart.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def free_of(self, names):
        idx = [self.chart.index(n) for n in names]
        return all(e[i] == 0 for e in self.terms for i in idx)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.chart != other.chart:
            raise ChartMismatch(f"{self.chart!r} vs {other.chart!r}")

    def _coerce(self, other):
        if isinstance(other, PolyExpr):
            self._check(other)
            return other
        if isinstance(other, Rational):
            return PolyExpr.const(self.chart, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return PolyExpr._raw(self.chart, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr._raw(self.chart, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, PolyExpr):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return PolyExpr._raw(self.chart, out)

    __rmul__ = __mul__

    def scale(self, c):
        c = _as_fraction(c)
        if not c:
            return PolyExpr.zero(self.chart)
        return PolyExpr._raw(self.chart, {e: v * c for e, v in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = PolyExpr.one(self.chart)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, PolyExpr):
            return self.chart == other.chart and self.terms == other.terms
        if isinstance(other, Rational):
            return self == PolyExpr.const(self.chart, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.chart, frozenset(self.terms.items())))
        return self._hash

    # -- calculus ---------------------------------------------------------

    def diff(self, name):
        i = self.chart.index(name)
        return self.diff_index(i)

    def diff_index(self, i):
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return PolyExpr._raw(self.chart, out)

    # -- text -------------------------------------------------------------

    def monomial_text(self, exp):
        parts = []
        for name, k in zip(self.chart.coordinates, exp):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __str__(self):
        return format_terms([(c, self.monomial_text(e)) for e, c in self.sorted_terms()])

    def __repr__(self):
        return f"PolyExpr({str(self)!r})"


def parse_poly(text, chart):
    """Parse text over chart into its canonical PolyExpr."""
    node = parse_ast(text)

    def ident(name, pos):
        if name not in chart:
            raise UnknownCoordinate(name, pos)
        return PolyExpr.var(chart, name)

    return evaluate_ast(
        node,
        number=lambda c: PolyExpr.const(chart, c),
        ident=ident,
        add=lambda a, b: a + b,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        scale=lambda a, c: a.scale(c),
        power=lambda a, k: a ** k,
    )


def poly_arith(op, a, b=None):
    if op == "neg":
        if b is not None:
            raise ValueError("neg takes one operand")
        return -a
    if b is None:
        raise ValueError(f"{op} takes two operands")
    if a.chart != b.chart:
        raise ChartMismatch(f"{a.chart!r} vs {b.chart!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f, coordinate):
    return f.diff(coordinate)


def substitute(f, bindings, target=None):
    """Simultaneous substitution of coordinates.

    bindings maps coordinate names of f.chart to PolyExpr over the target
    chart (f.chart by default). Unbound coordinates are carried over by name,
    so they must exist in the target chart.
    """
    target = target or f.chart
    for name in bindings:
        f.chart.index(name)
    images = []
    for name in f.chart.coordinates:
        if name in bindings:
            img = bindings[name]
            if isinstance(img, Rational) and not isinstance(img, PolyExpr):
                img = PolyExpr.const(target, img)
            if img.chart != target:
                raise ChartMismatch(f"binding for {name} is over {img.chart!r}, expected {target!r}")
        else:
            if name not in target:
                raise UnknownCoordinate(name)
            img = PolyExpr.var(target, name)
        images.append(img)
    out = PolyExpr.zero(target)
    cache = {}
    for exp, c in f.terms.items():
        term = PolyExpr.const(target, c)
        for i, k in enumerate(exp):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                term = term * cache[key]
        out = out + term
    return out


def rename(f, target, mapping=None):
    """Move f to another chart, renaming coordinates via mapping (default identity)."""
    mapping = mapping or {}
    bindings = {
        name: PolyExpr.var(target, mapping.get(name, name)) for name in f.chart.coordinates
    }
    return substitute(f, bindings, target)


def format_poly(f):
    return str(f)


__all__ = [
    "Chart",
    "PolyExpr",
    "parse_poly",
    "poly_arith",
    "partial_derivative",
    "substitute",
    "rename",
    "format_poly",
    "format_fraction",
]
