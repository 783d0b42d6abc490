"""Concrete syntax for terms and formulas.

Terms::

    term ::= '\\' ident '.' term | 'let' ident '=' rhs 'in' term | app
    app  ::= atom+                      (natural only; left-associative)
    rhs  ::= ident '@' term | term      (the first alternative is vanilla subtraction)
    atom ::= ident | '(' term ')'

Formulas: capitalized atoms, ``A -> B`` right-associative, parentheses.
Contexts: ``x:A, y:B``; in contexts ``?`` (or ``?name``) is an inference
placeholder.
"""
from __future__ import annotations

import re
from typing import List, NamedTuple

from .errors import ContractionConflict, ParseError
from .terms import App, Cut, ESub, Hole, Lam, Subtr, Term, Var

KEYWORDS = {"let", "in"}

_TOKEN = re.compile(
    r"""(?P<ws>[ \t\r\n]+)
      | (?P<comment>--[^\n]*)
      | (?P<arrow>->)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<meta>\?[A-Za-z0-9_]*)
      | (?P<punct>[\\λ.()=@:,])
    """,
    re.VERBOSE,
)


class Token(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            if kind == "punct" and chunk == "λ":
                chunk = "\\"
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, calculus: str):
        if calculus not in ("natural", "vanilla"):
            raise ValueError(f"unknown calculus {calculus!r}")
        self.toks = tokenize(text)
        self.i = 0
        self.calculus = calculus

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text):
        if self.tok.text != text or self.tok.kind not in ("punct", "ident", "arrow"):
            shown = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {shown!r}")
        return self.advance()

    def ident(self) -> Var:
        t = self.tok
        if t.kind != "ident" or t.text in KEYWORDS:
            self.error(f"expected an identifier, found {t.text or 'end of input'!r}")
        self.advance()
        return Var.of(t.text)

    def at_keyword(self, kw):
        return self.tok.kind == "ident" and self.tok.text == kw

    def done(self):
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")

    # -- terms --

    def term(self) -> Term:
        if self.tok.text == "\\" and self.tok.kind == "punct":
            self.advance()
            x = self.ident()
            self.expect(".")
            return Lam(x, self.term())
        if self.at_keyword("let"):
            return self.let()
        return self.app()

    def let(self) -> Term:
        self.advance()
        x = self.ident()
        self.expect("=")
        nxt = self.toks[self.i + 1]
        if self.tok.kind == "ident" and self.tok.text not in KEYWORDS and nxt.text == "@":
            at = self.toks[self.i + 1]
            if self.calculus != "vanilla":
                self.error("subtraction '@' is only part of the vanilla calculus", at)
            head = self.ident()
            self.advance()
            content = self.term()
            self.expect("in")
            return Subtr(head, content, x, self.term())
        content = self.term()
        self.expect("in")
        body = self.term()
        if self.calculus == "vanilla":
            return Cut(content, x, body)
        return ESub(content, x, body)

    def app(self) -> Term:
        start = self.tok
        t = self.atom()
        while self.starts_atom():
            if self.calculus == "vanilla":
                self.error("application is not part of the vanilla calculus", self.tok)
            t = App(t, self.atom())
        if t is None:
            self.error("expected a term", start)
        return t

    def starts_atom(self):
        tok = self.tok
        return (tok.kind == "ident" and tok.text not in KEYWORDS) or (
            tok.kind == "punct" and tok.text == "(")

    def atom(self) -> Term:
        tok = self.tok
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            t = self.term()
            self.expect(")")
            return t
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            return self.ident()
        self.error(f"expected a term, found {tok.text or 'end of input'!r}")


def parse_term(text: str, calculus: str = "natural") -> Term:
    p = _Parser(text, calculus)
    t = p.term()
    p.done()
    return t


def guess_calculus(text: str) -> str:
    return "vanilla" if "@" in text else "natural"


# ---------------------------------------------------------------------------
# Printing

_TOP, _FUN, _ARG, _CONTENT = 0, 1, 2, 3


def pretty(t: Term) -> str:
    out: list = []
    _pp(t, _TOP, out)
    return "".join(out)


def _pp(t, ctx, out):
    if isinstance(t, Var):
        out.append(str(t))
    elif isinstance(t, Hole):
        out.append("[.]")
    elif isinstance(t, App):
        if ctx == _ARG:
            out.append("(")
        _pp(t.fun, _FUN, out)
        out.append(" ")
        _pp(t.arg, _ARG, out)
        if ctx == _ARG:
            out.append(")")
    else:
        # Lets in let-content position are parenthesized for readability only.
        paren = ctx in (_FUN, _ARG) or (ctx == _CONTENT and not isinstance(t, Lam))
        if paren:
            out.append("(")
        if isinstance(t, Lam):
            out.append(f"\\{t.binder}. ")
            _pp(t.body, _TOP, out)
        else:
            out.append(f"let {t.binder} = ")
            if isinstance(t, Subtr):
                out.append(f"{t.head} @ ")
            _pp(t.content, _CONTENT, out)
            out.append(" in ")
            _pp(t.body, _TOP, out)
        if paren:
            out.append(")")


# ---------------------------------------------------------------------------
# Formulas and contexts


class _FormulaParser(_Parser):
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0
        self.calculus = None

    def formula(self):
        from .formulas import Imp

        left = self.fatom()
        if self.tok.kind == "arrow":
            self.advance()
            return Imp(left, self.formula())
        return left

    def fatom(self):
        from .formulas import Atom, Meta

        tok = self.tok
        if tok.kind == "punct" and tok.text == "(":
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if tok.kind == "meta":
            self.advance()
            return Meta(tok.text)
        if tok.kind == "ident" and tok.text[0].isupper():
            self.advance()
            return Atom(tok.text)
        self.error(f"expected a formula, found {tok.text or 'end of input'!r}")


def parse_formula(text: str):
    p = _FormulaParser(text)
    f = p.formula()
    p.done()
    return f


def parse_context(text: str):
    """``x:A, y:B -> C``; ``?`` makes a fresh placeholder for each occurrence."""
    from .formulas import Meta, TypeCtx

    p = _FormulaParser(text)
    ctx = TypeCtx()
    while p.tok.kind != "eof":
        x = p.ident()
        p.expect(":")
        f = p.formula()
        if isinstance(f, Meta) and f.name == "?":
            f = Meta(f"?{x}")
        try:
            ctx = ctx.extend(x, f)
        except ContractionConflict as exc:
            p.error(str(exc))
        if p.tok.text == ",":
            p.advance()
        elif p.tok.kind != "eof":
            p.error(f"expected ',' or end of context, found {p.tok.text!r}")
    return ctx
