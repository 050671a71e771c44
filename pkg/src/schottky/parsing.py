"""Text grammar for rational functions in ``t`` and matrices over Q(t).

    matrix := row (';' row)* [';']
    row    := expr (',' expr)*
    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ['^' ['-' | '+'] INT]
    atom   := INT | 't' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-t^2`` is ``-(t^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .exactalg import RatFn, T
from .matqt import MatK

__all__ = ["ParseError", "parse_ratfn", "parse_matrix_text"]

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|([-+*/^(),;]))")


class ParseError(ValueError):
    def __init__(self, msg: str, src: str, pos: int):
        line = src.count("\n", 0, pos) + 1
        col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{msg} at line {line}, column {col}")
        self.line, self.column = line, col


@dataclass
class _Tok:
    kind: str  # int | t | op | end
    text: str
    pos: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m:
            raise ParseError(f"unexpected character {src[i]!r}", src, i)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("t", "t", start))
        else:
            toks.append(_Tok("op", m.group(3), start))
        i = m.end()
    toks.append(_Tok("end", "", len(src)))
    return toks


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok = None):
        tok = tok or self.tok
        return ParseError(msg, self.src, tok.pos)

    def eat(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.eat(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")

    def matrix(self) -> MatK:
        rows = [self.row()]
        while self.eat(";"):
            if self.tok.kind == "end":
                break
            rows.append(self.row())
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ParseError(f"matrix is not square: {n} rows but a row of length {len(r)}", self.src, 0)
        return MatK(rows)

    def row(self) -> list[RatFn]:
        out = [self.expr()]
        while self.eat(","):
            out.append(self.expr())
        return out

    def expr(self) -> RatFn:
        acc = self.term()
        while True:
            if self.eat("+"):
                acc = acc + self.term()
            elif self.eat("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> RatFn:
        acc = self.unary()
        while True:
            if self.eat("*"):
                acc = acc * self.unary()
            elif self.tok.kind == "op" and self.tok.text == "/":
                tok = self.tok
                self.i += 1
                d = self.unary()
                if not d:
                    raise self.error("division by zero", tok)
                acc = acc / d
            else:
                return acc

    def unary(self) -> RatFn:
        if self.eat("-"):
            return -self.unary()
        if self.eat("+"):
            return self.unary()
        return self.power()

    def power(self) -> RatFn:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            tok = self.tok
            self.i += 1
            sign = -1 if self.eat("-") else 1
            if sign == 1:
                self.eat("+")
            if self.tok.kind != "int":
                raise self.error("exponent must be an integer")
            k = sign * int(self.tok.text)
            self.i += 1
            if k < 0 and not base:
                raise self.error("division by zero", tok)
            return base ** k
        return base

    def atom(self) -> RatFn:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return RatFn(int(tok.text))
        if tok.kind == "t":
            self.i += 1
            return T
        if self.eat("("):
            e = self.expr()
            self.expect(")")
            return e
        found = tok.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_ratfn(src: str) -> RatFn:
    p = _Parser(src)
    e = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return e


def parse_matrix_text(src: str) -> MatK:
    if not src.strip():
        raise ParseError("empty matrix", src, 0)
    return _Parser(src).matrix()
