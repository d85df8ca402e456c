"""Recursive-descent parser for operator expressions.

Grammar (``T`` is theta = z d/dz, ``D`` is d/dz)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' uint)?
    base    := rational | 'z' | 'T' | 'D' | '(' expr ')'
    rational:= uint ('/' uint)?

Products are noncommutative compositions read left to right. Juxtaposition
is rejected. ``θ``/``ϑ`` and ``∂`` are accepted as aliases of ``T`` and ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .core.ratfunc import RatFunc
from .errors import ParseError
from .operators import DOperator, Operator, to_theta_form

_ALIASES = {"θ": "T", "ϑ": "T", "∂": "D", "−": "-", "·": "*"}
_SINGLE = set("+-*/^()zTD")


@dataclass(frozen=True)
class _Tok:
    kind: str            # 'int', one of _SINGLE, or 'end'
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(text):
        ch = _ALIASES.get(text[i], text[i])
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch in _SINGLE:
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {text[i]!r}", i,
                             ["number", "z", "T", "D", "(", "operator"])
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.uses_d = False

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.cur
        if tok.kind != kind:
            self.fail([kind])
        self.i += 1
        return tok

    def fail(self, expected):
        tok = self.cur
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"expected {' or '.join(expected)}, found {found}",
                         tok.pos, list(expected))

    def parse(self) -> DOperator:
        if self.cur.kind == "end":
            self.fail(["expression"])
        out = self.expr()
        if self.cur.kind != "end":
            self.fail(["'+'", "'-'", "'*'", "end of input"])
        return out

    def expr(self) -> DOperator:
        neg = False
        if self.cur.kind == "-":
            self.i += 1
            neg = True
        acc = self.term()
        if neg:
            acc = -acc
        while self.cur.kind in ("+", "-"):
            op = self.take(self.cur.kind).kind
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> DOperator:
        acc = self.factor()
        while self.cur.kind == "*":
            self.i += 1
            acc = acc * self.factor()
        if self.cur.kind in ("int", "z", "T", "D", "("):
            self.fail(["'*'", "'+'", "'-'", "')'", "end of input"])
        return acc

    def factor(self) -> DOperator:
        b = self.base()
        if self.cur.kind == "^":
            self.i += 1
            e = int(self.take("int").text)
            return b ** e
        return b

    def base(self) -> DOperator:
        tok = self.cur
        if tok.kind == "int":
            self.i += 1
            num = mpq(int(tok.text))
            if self.cur.kind == "/":
                self.i += 1
                den = self.cur
                d = int(self.take("int").text)
                if d == 0:
                    raise ParseError("division by zero", den.pos, ["nonzero integer"])
                num = num / d
            return DOperator([num])
        if tok.kind == "z":
            self.i += 1
            return DOperator([RatFunc.z()])
        if tok.kind == "T":
            self.i += 1
            return DOperator([0, RatFunc.z()])
        if tok.kind == "D":
            self.i += 1
            self.uses_d = True
            return DOperator.D()
        if tok.kind == "(":
            self.i += 1
            inner = self.expr()
            self.take(")")
            return inner
        self.fail(["number", "'z'", "'T'", "'D'", "'('"])


def parse_operator(text: str) -> Operator:
    """Parse ``text`` into an exact operator.

    Returns a ThetaOperator when the expression does not mention ``D``, and
    a DOperator with polynomial coefficients otherwise.
    """
    p = _Parser(text)
    op = p.parse()
    if p.uses_d:
        return op
    return to_theta_form(op, normalize=False)
