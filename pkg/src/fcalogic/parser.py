"""Concrete ASCII syntax for two-sorted modal formulas.

Grammar (EBNF, whitespace-insensitive):

    formula  = iff ;
    iff      = imp , { "<->" , imp } ;                 (* left-assoc *)
    imp      = or , [ "->" , imp ] ;                   (* right-assoc *)
    or       = and , { "|" , and } ;
    and      = unary , { "&" , unary } ;
    unary    = "~" , unary | modality , unary | "N_o" | "N_p" , "(" , formula , "," , formula , ")"
             | "(" , formula , ")" | atom | constant ;
    atom     = name , [ "@1" | "@2" ] ;                (* unsuffixed needs a sort env *)
    constant = ( "true" | "false" ) , ( "@1" | "@2" ) ;
    modality = "[U_o]" | "[U_p]"
             | "[" , rel , [ mods ] , "]"              (* box *)
             | "[[" , rel , [ mods ] , "]]" , [ "~" ]  (* window / window dual *)
             | "<" , rel , [ dmods ] , ">" ;           (* diamond *)
    rel      = [ "-" ] , ( "o" | "p" ) ;               (* "-" = complement base *)
    mods     = ":" , nat | ">=" , rational ;           (* grade / weight *)
    dmods    = ":" , nat , [ "!" ] | ">=" , rational ; (* "!" = exact count *)
    rational = nat , [ "/" , nat ] ;

Precedence: ~ and modal prefixes bind tightest, then & , | , -> , <->.
`N_o(f,g)` and `[U_o]` (and p-versions) are accepted as sugar and expand at
parse time, so printed output never contains them; `parse(unparse(f)) == f`
holds for every AST the library can build.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from .context import S1, S2
from .errors import ParseError, SortError
from .formula import (And, Atom, Bottom, Formula, Iff, Implies, Modal,
                      ModalDescriptor, Not, Or, Top, _Binary, n_op)

_TOKEN_RES = [
    ("WS", re.compile(r"\s+")),
    ("U", re.compile(r"\[U_([op])\]")),
    ("WINDOW", re.compile(
        r"\[\[(-?)([op])(?::(\d+)|>=(\d+(?:/\d+)?))?\]\](~?)")),
    ("BOX", re.compile(r"\[(-?)([op])(?::(\d+)|>=(\d+(?:/\d+)?))?\]")),
    ("IFF", re.compile(r"<->")),
    ("DIAMOND", re.compile(r"<(-?)([op])(?::(\d+)(!?)|>=(\d+(?:/\d+)?))?>")),
    ("IMPLIES", re.compile(r"->")),
    ("NOT", re.compile(r"~")),
    ("AND", re.compile(r"&")),
    ("OR", re.compile(r"\|")),
    ("LP", re.compile(r"\(")),
    ("RP", re.compile(r"\)")),
    ("COMMA", re.compile(r",")),
    ("NAME", re.compile(r"[A-Za-z_][A-Za-z0-9_]*(@[12])?")),
]


class _Token:
    __slots__ = ("kind", "text", "pos", "match")

    def __init__(self, kind, text, pos, match):
        self.kind = kind
        self.text = text
        self.pos = pos
        self.match = match


def _tokenize(text: str) -> list[_Token]:
    out = []
    pos = 0
    while pos < len(text):
        for kind, rx in _TOKEN_RES:
            m = rx.match(text, pos)
            if m:
                if kind != "WS":
                    out.append(_Token(kind, m.group(0), pos, m))
                pos = m.end()
                break
        else:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
    out.append(_Token("EOF", "", len(text), None))
    return out


def _descriptor(tok: _Token) -> ModalDescriptor:
    m = tok.match
    if tok.kind == "BOX":
        base = "C" if m.group(1) else "I"
        grade = int(m.group(3)) if m.group(3) else None
        weight = Fraction(m.group(4)) if m.group(4) else None
        return ModalDescriptor(m.group(2), "box", base, grade, weight)
    if tok.kind == "WINDOW":
        base = "C" if m.group(1) else "I"
        grade = int(m.group(3)) if m.group(3) else None
        weight = Fraction(m.group(4)) if m.group(4) else None
        style = "window_dual" if m.group(5) else "window"
        return ModalDescriptor(m.group(2), style, base, grade, weight)
    if tok.kind == "DIAMOND":
        base = "C" if m.group(1) else "I"
        grade = int(m.group(3)) if m.group(3) else None
        exact = bool(m.group(4))
        weight = Fraction(m.group(5)) if m.group(5) else None
        return ModalDescriptor(m.group(2), "diamond", base, grade, weight, exact)
    raise AssertionError(tok.kind)


class _Parser:
    def __init__(self, tokens: list[_Token], sort_env: Optional[dict]):
        self.toks = tokens
        self.i = 0
        self.env = dict(sort_env or {})

    def peek(self) -> _Token:
        return self.toks[self.i]

    def take(self, kind: str) -> _Token:
        tok = self.toks[self.i]
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.text or 'end of input'!r}",
                             tok.pos)
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.iff()
        tok = self.peek()
        if tok.kind != "EOF":
            raise ParseError(f"trailing input {tok.text!r}", tok.pos)
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.peek().kind == "IFF":
            tok = self.take("IFF")
            f = self._mk(Iff, f, self.imp(), tok)
        return f

    def imp(self) -> Formula:
        f = self.or_()
        if self.peek().kind == "IMPLIES":
            tok = self.take("IMPLIES")
            f = self._mk(Implies, f, self.imp(), tok)
        return f

    def or_(self) -> Formula:
        f = self.and_()
        while self.peek().kind == "OR":
            tok = self.take("OR")
            f = self._mk(Or, f, self.and_(), tok)
        return f

    def and_(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "AND":
            tok = self.take("AND")
            f = self._mk(And, f, self.unary(), tok)
        return f

    def _mk(self, cls, left, right, tok):
        try:
            return cls(left, right)
        except SortError as exc:
            raise ParseError(str(exc), tok.pos) from None

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "NOT":
            self.take("NOT")
            return Not(self.unary())
        if tok.kind in ("BOX", "WINDOW", "DIAMOND"):
            self.i += 1
            op = _descriptor(tok)
            child = self.unary()
            try:
                return Modal(op, child)
            except SortError as exc:
                raise ParseError(str(exc), tok.pos) from None
        if tok.kind == "U":
            self.i += 1
            direction = tok.match.group(1)
            child = self.unary()
            try:
                return n_op(direction, child, child)
            except SortError as exc:
                raise ParseError(str(exc), tok.pos) from None
        return self.primary()

    def primary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "LP":
            self.take("LP")
            f = self.iff()
            self.take("RP")
            return f
        if tok.kind == "NAME":
            self.i += 1
            return self.name_node(tok)
        raise ParseError(f"expected a formula, found {tok.text or 'end of input'!r}",
                         tok.pos)

    def name_node(self, tok: _Token) -> Formula:
        text = tok.text
        name, _, suffix = text.partition("@")
        if name in ("N_o", "N_p"):
            if suffix:
                raise ParseError("N operators take no sort suffix", tok.pos)
            direction = name[-1]
            self.take("LP")
            f = self.iff()
            self.take("COMMA")
            g = self.iff()
            self.take("RP")
            try:
                return n_op(direction, f, g)
            except SortError as exc:
                raise ParseError(str(exc), tok.pos) from None
        sort = None
        if suffix:
            sort = S1 if suffix == "1" else S2
        elif name in self.env:
            sort = _normalize_sort(self.env[name])
        if name in ("true", "false"):
            if sort is None:
                raise ParseError(f"constant {name!r} needs a sort suffix", tok.pos)
            return Top(sort) if name == "true" else Bottom(sort)
        if sort is None:
            raise ParseError(f"atom {name!r} has no sort suffix and is not declared",
                             tok.pos)
        if name in self.env and _normalize_sort(self.env[name]) != sort:
            raise ParseError(
                f"atom {name!r} is declared as {self.env[name]} but written @{suffix}",
                tok.pos)
        return Atom(name, sort)


def _normalize_sort(s) -> str:
    if s in (S1, 1, "1"):
        return S1
    if s in (S2, 2, "2"):
        return S2
    raise SortError(f"unknown sort {s!r} in sort environment")


def parse(text: str, sort_env: Optional[dict] = None) -> Formula:
    """Parse a formula.  Unsuffixed atom names are resolved via `sort_env`."""
    return _Parser(_tokenize(text), sort_env).parse()


# -- printing -----------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OP_TEXT = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def _weight_text(w: Fraction) -> str:
    return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"


def _modal_text(op: ModalDescriptor) -> str:
    core = ("-" if op.base == "C" else "") + op.direction
    if op.grade is not None:
        core += f":{op.grade}"
        if op.exact:
            core += "!"
    elif op.weight is not None:
        core += f">={_weight_text(op.weight)}"
    if op.style == "box":
        return f"[{core}]"
    if op.style == "diamond":
        return f"<{core}>"
    if op.style == "window":
        return f"[[{core}]]"
    return f"[[{core}]]~"


def unparse(f: Formula) -> str:
    """Render a formula; `parse(unparse(f)) == f` for every AST."""
    return _unparse(f, 0)


def _unparse(f: Formula, parent_prec: int) -> str:
    if isinstance(f, Atom):
        return f"{f.name}@{'1' if f.sort == S1 else '2'}"
    if isinstance(f, Top):
        return f"true@{'1' if f.sort == S1 else '2'}"
    if isinstance(f, Bottom):
        return f"false@{'1' if f.sort == S1 else '2'}"
    if isinstance(f, Not):
        return "~" + _unparse(f.child, 5)
    if isinstance(f, Modal):
        return _modal_text(f.op) + " " + _unparse(f.child, 5)
    assert isinstance(f, _Binary)
    prec = _PREC[type(f)]
    if type(f) is Implies:  # right-associative
        left = _unparse(f.left, prec + 1)
        right = _unparse(f.right, prec)
    else:  # left-associative
        left = _unparse(f.left, prec)
        right = _unparse(f.right, prec + 1)
    text = f"{left} {_OP_TEXT[type(f)]} {right}"
    return f"({text})" if prec < parent_prec else text
