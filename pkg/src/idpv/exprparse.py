"""Recursive-descent parser for the polynomial expression grammar.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' NUMBER)*
    atom   := NUMBER ('/' NUMBER)? | VAR | '-' factor | '(' expr ')'

Numbers are nonnegative integers; a slash between two numbers denotes an
exact fraction.  Variables are single names from the caller's allow-list
(usually just ``t``, plus ``T`` for module matrices).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .scalars import FieldSpec
from .series import Poly, TruncSeries


class _Tokenizer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        line, col = 1, 1
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("num", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch.isalpha() or ch == "_":
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.tokens.append(("name", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, line, col))
                i += 1
                col += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", line, col)
        self.tokens.append(("end", "", line, col))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, got {tok[1]!r}", tok[2], tok[3])
        return tok


class _PolyParser:
    """Parses into a dict mapping variable-exponent tuples to Fractions."""

    def __init__(self, text, variables):
        self.toks = _Tokenizer(text)
        self.variables = tuple(variables)

    def parse(self):
        result = self._expr()
        tok = self.toks.peek()
        if tok[0] != "end":
            raise ParseError(f"trailing input {tok[1]!r}", tok[2], tok[3])
        return result

    def _const(self, value):
        key = (0,) * len(self.variables)
        return {key: Fraction(value)}

    def _add(self, a, b, sign=1):
        out = dict(a)
        for k, v in b.items():
            out[k] = out.get(k, Fraction(0)) + sign * v
            if out[k] == 0:
                del out[k]
        return out

    def _mul(self, a, b):
        out = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                out[k] = out.get(k, Fraction(0)) + va * vb
                if out[k] == 0:
                    del out[k]
        return out

    def _expr(self):
        tok = self.toks.peek()
        if tok[0] == "-":
            self.toks.next()
            acc = self._add(self._const(0), self._term(), sign=-1)
        else:
            acc = self._term()
        while True:
            tok = self.toks.peek()
            if tok[0] == "+":
                self.toks.next()
                acc = self._add(acc, self._term())
            elif tok[0] == "-":
                self.toks.next()
                acc = self._add(acc, self._term(), sign=-1)
            else:
                return acc

    def _term(self):
        acc = self._factor()
        while self.toks.peek()[0] == "*":
            self.toks.next()
            acc = self._mul(acc, self._factor())
        return acc

    def _factor(self):
        base = self._atom()
        while self.toks.peek()[0] == "^":
            self.toks.next()
            tok = self.toks.expect("num")
            n = int(tok[1])
            acc = self._const(1)
            for _ in range(n):
                acc = self._mul(acc, base)
            base = acc
        return base

    def _atom(self):
        tok = self.toks.next()
        if tok[0] == "num":
            value = Fraction(int(tok[1]))
            if self.toks.peek()[0] == "/":
                self.toks.next()
                den = self.toks.expect("num")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2], den[3])
                value = value / int(den[1])
            return self._const(value)
        if tok[0] == "name":
            if tok[1] not in self.variables:
                raise ParseError(f"unknown variable {tok[1]!r}", tok[2], tok[3])
            key = tuple(1 if v == tok[1] else 0 for v in self.variables)
            return {key: Fraction(1)}
        if tok[0] == "-":
            return self._add(self._const(0), self._factor(), sign=-1)
        if tok[0] == "(":
            inner = self._expr()
            self.toks.expect(")")
            return inner
        raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])


def parse_polynomial(text: str, field: FieldSpec, var: str = "t") -> Poly:
    """Parse a univariate polynomial in the given variable."""
    terms = _PolyParser(text, (var,)).parse()
    degree = max((k[0] for k in terms), default=0)
    coeffs = [field.scalar(terms.get((i,), Fraction(0))) for i in range(degree + 1)]
    return Poly(field, coeffs, var=var)


def parse_tT_series(text: str, field: FieldSpec, order: int) -> TruncSeries:
    """Parse a polynomial in t and T into a T-series with Poly coefficients.

    T-degrees above the truncation order are rejected: the input claims more
    information than the series can carry.
    """
    terms = _PolyParser(text, ("t", "T")).parse()
    t_deg = max((k[0] for k in terms), default=0)
    T_deg = max((k[1] for k in terms), default=0)
    if T_deg > order:
        raise ParseError(
            f"T-degree {T_deg} exceeds the truncation order {order}"
        )
    coeffs = []
    for n in range(order + 1):
        cs = [field.scalar(terms.get((i, n), Fraction(0))) for i in range(t_deg + 1)]
        coeffs.append(Poly(field, cs, var="t"))
    return TruncSeries("T", order, coeffs)
