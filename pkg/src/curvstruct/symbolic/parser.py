"""Recursive-descent parser for manifest expressions.

Grammar (loosest to tightest binding)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | '+' unary | power
    power   := atom ('^' exponent)?
    exponent:= ['-' | '+'] INT | '(' ['-' | '+'] INT ')'
    atom    := INT | IDENT | '(' expr ')'

so ``-x1^2`` is ``-(x1^2)`` and ``2/3*x1`` is ``(2/3)*x1``.  Values are built
directly as canonical :class:`RationalFunction` objects; there is no AST.
"""

from __future__ import annotations

import re

from ..errors import ExpressionError, UnknownIdentifierError, ZeroDivisionInExpression
from .rational import RationalFunction

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text):
    tokens = []
    pos = 0
    end = len(text)
    while pos < end:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExpressionError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = tuple(names)
        self.index = {name: i for i, name in enumerate(self.names)}
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value):
        kind, text, at = self.advance()
        if text != value:
            found = "end of input" if kind == "end" else repr(text)
            raise ExpressionError(f"expected {value!r}, found {found}", at, self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise ExpressionError("empty expression", 0, self.text)
        value = self.expr()
        kind, text, at = self.peek()
        if kind != "end":
            raise ExpressionError(f"unexpected token {text!r}", at, self.text)
        return value

    def expr(self):
        value = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.advance()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[1] in ("*", "/"):
            _, op, at = self.advance()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ZeroDivisionInExpression("division by zero", at, self.text)
                value = value / rhs
        return value

    def unary(self):
        kind, text, _ = self.peek()
        if kind == "op" and text in ("-", "+"):
            self.advance()
            operand = self.unary()
            return -operand if text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] != "^":
            return base
        _, _, at = self.advance()
        exponent = self.exponent()
        if exponent < 0 and base.is_zero():
            raise ZeroDivisionInExpression("zero raised to a negative power", at, self.text)
        if self.peek()[1] == "^":
            raise ExpressionError("chained '^' is not supported; parenthesize", self.peek()[2], self.text)
        return base ** exponent

    def exponent(self):
        parens = False
        if self.peek()[1] == "(":
            self.advance()
            parens = True
        sign = 1
        if self.peek()[1] in ("-", "+"):
            sign = -1 if self.advance()[1] == "-" else 1
        kind, text, at = self.advance()
        if kind != "int":
            raise ExpressionError("exponent must be an integer literal", at, self.text)
        if parens:
            self.expect(")")
        return sign * int(text)

    def atom(self):
        kind, text, at = self.advance()
        if kind == "int":
            return RationalFunction.constant(int(text), self.names)
        if kind == "ident":
            if text not in self.index:
                raise UnknownIdentifierError(f"unknown identifier {text!r}", at, self.text)
            return RationalFunction.variable(self.index[text], self.names)
        if text == "(":
            value = self.expr()
            self.expect(")")
            return value
        found = "end of input" if kind == "end" else repr(text)
        raise ExpressionError(f"unexpected {found}", at, self.text)


def parse_expression(text: str, chart) -> RationalFunction:
    """Parse ``text`` into a canonical rational function over ``chart``.

    ``chart`` may be a :class:`~curvstruct.tensor.Chart` or a plain sequence
    of coordinate names.
    """
    names = getattr(chart, "names", chart)
    return _Parser(text, names).parse()
