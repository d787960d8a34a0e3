"""Text grammar for polynomials.

::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' unary) | ('/' NUMBER))*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INTEGER)?
    atom   := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'

Whitespace is insignificant.  Negative exponents are accepted only when
``laurent=True`` and only on a single monomial.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .poly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            tokens.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("id", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r}",
                                 *_position(text, m.start(3)))
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables, laurent):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.laurent = laurent

    def error(self, message, tok=None):
        tok = tok or self.tokens[self.i]
        raise ParseError(message, *_position(self.text, tok[2]))

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, op):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            if self.accept("*"):
                p = p * self.unary()
            elif self.accept("/"):
                tok = self.take()
                if tok[0] != "num":
                    self.error("division only by an integer literal", tok)
                if tok[1] == 0:
                    self.error("division by zero", tok)
                p = p * Fraction(1, tok[1])
            else:
                return p

    def unary(self):
        if self.accept("-"):
            return -self.unary()
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept("^"):
            return base
        neg = self.accept("-")
        tok = self.take()
        if tok[0] != "num":
            self.error("exponent must be an integer literal", tok)
        k = tok[1]
        if not neg:
            return base ** k
        if not self.laurent:
            self.error("negative exponent outside a Laurent polynomial", tok)
        if len(base.terms) != 1:
            self.error("negative exponent on a non-monomial", tok)
        (e, c), = base.terms.items()
        return MultiPoly(self.vars, {tuple(-k * a for a in e): c ** (-k)})

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            if self.peek()[:2] == ("op", "/") and self.tokens[self.i + 1][0] == "num":
                self.i += 1
                den = self.take()
                if den[1] == 0:
                    self.error("zero denominator", den)
                return MultiPoly.constant(self.vars, Fraction(val, den[1]))
            return MultiPoly.constant(self.vars, Fraction(val))
        if kind == "id":
            if val not in self.vars:
                self.error(f"unknown variable {val!r}", tok)
            return MultiPoly.var(self.vars, val)
        if kind == "op" and val == "(":
            p = self.expr()
            if not self.accept(")"):
                self.error("expected ')'")
            return p
        self.error("unexpected end of input" if kind == "end"
                   else f"unexpected {val!r}", tok)


def identifiers(text):
    """Identifiers in order of first appearance."""
    seen = []
    for kind, val, _ in _tokenize(text):
        if kind == "id" and val not in seen:
            seen.append(val)
    return seen


def parse_polynomial(text, variables=None, laurent=False):
    """Parse ``text`` into a :class:`MultiPoly` over Q.

    If ``variables`` is omitted, the identifiers are taken in order of first
    appearance.
    """
    if not isinstance(text, str):
        raise ParseError("polynomial must be a string", 1, 1)
    if variables is None:
        variables = identifiers(text)
    return _Parser(text, variables, laurent).parse()
