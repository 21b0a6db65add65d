"""Tokenizer and recursive-descent parser for the polynomial text grammar.

    expr  := term (('+' | '-') term)*
    term  := unary (('*' unary) | ('/' INT))*
    unary := ('-' | '+') unary | power
    power := atom ('^' INT)?
    atom  := INT | IDENT | '(' expr ')'

The parser produces a small AST that is evaluated through callbacks, so the
same grammar serves plain polynomials and graded elements (where identifiers
may also be frame labels and '*' is the wedge product).
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import PolySyntaxError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "ident", "op", "end"
    text: str
    pos: int


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("ident", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST nodes are plain tuples:
#   ("num", Fraction) ("ident", name, pos) ("add", a, b) ("sub", a, b)
#   ("mul", a, b) ("div", a, int) ("neg", a) ("pow", a, int)


class _Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_int(self):
        tok = self.advance()
        if tok.kind != "int":
            raise PolySyntaxError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, "integer literal")
        return int(tok.text)

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise PolySyntaxError(f"unexpected {tok.text!r}", tok.pos, "operator or end of input")
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.advance().text
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.advance()
            if op.text == "*":
                node = ("mul", node, self.unary())
            else:
                den = self.expect_int()
                if den == 0:
                    raise PolySyntaxError("division by zero", op.pos)
                node = ("div", node, den)
        return node

    def unary(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            inner = self.unary()
            return ("neg", inner) if tok.text == "-" else inner
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.advance()
            node = ("pow", node, self.expect_int())
        return node

    def atom(self):
        tok = self.advance()
        if tok.kind == "int":
            return ("num", Fraction(int(tok.text)))
        if tok.kind == "ident":
            return ("ident", tok.text, tok.pos)
        if tok.kind == "op" and tok.text == "(":
            node = self.expr()
            close = self.advance()
            if close.kind != "op" or close.text != ")":
                raise PolySyntaxError(f"unexpected {close.text or 'end of input'!r}", close.pos, "')'")
            return node
        raise PolySyntaxError(
            f"unexpected {tok.text or 'end of input'!r}", tok.pos, "number, name or '('"
        )


def parse_ast(text):
    if not text.strip():
        raise PolySyntaxError("empty expression", 0, "number, name or '('")
    return _Parser(text).parse()


def evaluate_ast(node, *, number, ident, add, mul, neg, scale, power):
    """Fold an AST with algebra callbacks.

    scale(x, Fraction) multiplies by a rational, power(x, int) raises to an
    integer power. Subtraction is add(a, neg(b)).
    """

    def ev(n):
        tag = n[0]
        if tag == "num":
            return number(n[1])
        if tag == "ident":
            return ident(n[1], n[2])
        if tag == "add":
            return add(ev(n[1]), ev(n[2]))
        if tag == "sub":
            return add(ev(n[1]), neg(ev(n[2])))
        if tag == "mul":
            return mul(ev(n[1]), ev(n[2]))
        if tag == "div":
            return scale(ev(n[1]), Fraction(1, n[2]))
        if tag == "neg":
            return neg(ev(n[1]))
        if tag == "pow":
            return power(ev(n[1]), n[2])
        raise AssertionError(tag)

    return ev(node)


def format_fraction(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_terms(terms):
    """Join (coefficient, factor-string) pairs into canonical text.

    A coefficient of 1 is omitted when there are factors; zero terms are the
    caller's business.
    """
    if not terms:
        return "0"
    parts = []
    for idx, (c, factors) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if factors:
            body = factors if mag == 1 else f"{format_fraction(mag)}*{factors}"
        else:
            body = format_fraction(mag)
        if idx == 0:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
