"""Text input: polynomial expressions and variable lists.

Grammar (no implicit multiplication, unary minus only at the head of an
expression):

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' NAT)?
    base     := RATIONAL | IDENT | '(' expr ')'
    RATIONAL := INT ('/' POSINT)?

Errors carry the offset into the input and the tokens that would have been
accepted there, so callers can render a caret diagnostic.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .poly import MultiPoly, VarSet

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


class _Token:
    __slots__ = ("kind", "text", "pos", "value")

    def __init__(self, kind: str, text: str, pos: int, value=None):
        self.kind = kind
        self.text = text
        self.pos = pos
        self.value = value


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(
                "unexpected character %r" % text[pos],
                pos,
                ("number", "identifier", "operator"),
            )
        if m.lastgroup == "number":
            body = m.group()
            if "/" in body:
                num_s, den_s = body.split("/")
                if int(den_s) == 0:
                    raise ParseError("zero denominator in rational literal", pos)
                value = Fraction(int(num_s), int(den_s))
            else:
                value = Fraction(int(body))
            tokens.append(_Token("number", body, pos, value))
        elif m.lastgroup == "ident":
            tokens.append(_Token("ident", m.group(), pos))
        elif m.lastgroup == "op":
            tokens.append(_Token(m.group(), m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: VarSet):
        self.text = text
        self.vars = vars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                "unexpected %s" % (repr(tok.text) if tok.text else "end of input"),
                tok.pos,
                (kind,),
            )
        return self.take()

    def parse(self) -> MultiPoly:
        p = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(
                "unexpected %r after expression" % tok.text, tok.pos, ("+", "-", "*", "^", "end")
            )
        return p

    def expr(self) -> MultiPoly:
        negate = False
        if self.peek().kind == "-":
            self.take()
            negate = True
        total = self.term()
        if negate:
            total = -total
        while self.peek().kind in ("+", "-"):
            op = self.take()
            t = self.term()
            total = total + t if op.kind == "+" else total - t
        return total

    def term(self) -> MultiPoly:
        p = self.factor()
        while self.peek().kind == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> MultiPoly:
        p = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "number" or "/" in tok.text:
                raise ParseError(
                    "exponent must be a non-negative integer literal",
                    tok.pos,
                    ("integer",),
                )
            self.take()
            p = p ** int(tok.text)
        return p

    def base(self) -> MultiPoly:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            return MultiPoly.const(self.vars, tok.value)
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.vars:
                raise ParseError(
                    "unknown identifier %r" % tok.text,
                    tok.pos,
                    tuple(self.vars.names),
                )
            return MultiPoly.variable(self.vars, tok.text)
        if tok.kind == "(":
            self.take()
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError(
            "unexpected %s" % (repr(tok.text) if tok.text else "end of input"),
            tok.pos,
            ("number", "identifier", "("),
        )


def parse_poly(text: str, vars: VarSet) -> MultiPoly:
    """Parse an expression over a fixed variable set."""
    return _Parser(text, vars).parse()


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def parse_var_names(text: str) -> tuple[str, ...]:
    """Parse a comma-separated variable list like "x, y"."""
    names: list[str] = []
    pos = 0
    expecting_name = True
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if expecting_name:
            m = _NAME_RE.match(text, pos)
            if m is None:
                raise ParseError("expected a variable name", pos, ("identifier",))
            names.append(m.group())
            pos = m.end()
            expecting_name = False
        else:
            if ch != ",":
                raise ParseError("expected ','", pos, (",",))
            pos += 1
            expecting_name = True
    if expecting_name:
        raise ParseError("expected a variable name", n, ("identifier",))
    if len(set(names)) != len(names):
        raise ParseError("duplicate variable name", 0)
    return tuple(names)
