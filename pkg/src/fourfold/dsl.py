"""Textual DSL for manifold expressions (grammar v1).

::

    expr    := term { "#" term }
    term    := [count "*"] primary
    primary := atom | "(" expr ")" | "reverse" "(" expr ")"
    atom    := "S4" | "CP2" | "CP2~" | "S2xS2" | "T4" | "K3"
             | "Hyp(" int ")" | "Cover(" int "," int ")"
             | "Surface(" key "=" value {"," key "=" value} ")"

Surface keys: c1sq, chi_h (required, integers), minimal, ample_K, sc
(yes|no, defaults no/no/yes), spin (yes|no|unknown, default unknown).
A trailing "~" reverses the orientation of any single atom; general
subexpressions use "reverse(...)".  Whitespace is insignificant.

``parse`` returns the canonical form; ``format_expr`` is its inverse on
canonical forms, preferring the "K3" alias over "Hyp(4)" and the "A~"
shorthand for the reversed projective plane.
"""

from __future__ import annotations

from itertools import groupby
from typing import NamedTuple

from . import algebra
from .algebra import (
    Atom,
    AtomKind,
    ConnectedSum,
    ManifoldExpr,
    Reverse,
    SurfaceSpec,
    TriState,
)
from .errors import DomainError, ParseError

_SYMBOLS = "#*(),=~"

_SIMPLE_ATOMS = {
    "S4": AtomKind.S4,
    "CP2": AtomKind.CP2,
    "S2xS2": AtomKind.S2XS2,
    "T4": AtomKind.T4,
}

_ATOM_NAMES = ("S4", "CP2", "CP2~", "S2xS2", "T4", "K3", "Hyp(..)", "Cover(..)", "Surface(..)")

_SURFACE_KEYS = ("c1sq", "chi_h", "minimal", "ample_K", "spin", "sc")


class _Token(NamedTuple):
    kind: str  # "int", "ident", "eof", or one of _SYMBOLS
    text: str
    pos: int


def _show(tok: _Token) -> str:
    return repr(tok.text) if tok.text else "end of input"


def _tokenize(text: str) -> list[_Token]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOLS:
            toks.append(_Token(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", text[i:j], i))
            i = j
            continue
        if c.isalpha():
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Token("ident", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i, expected=("token",))
    toks.append(_Token("eof", "", n))
    return toks


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {what}, found {_show(tok)}", tok.pos, expected=(what,)
            )
        return self.advance()

    def parse_expr(self) -> ManifoldExpr:
        parts = self.parse_term()
        while self.peek().kind == "#":
            self.advance()
            parts.extend(self.parse_term())
        return parts[0] if len(parts) == 1 else ConnectedSum(tuple(parts))

    def parse_term(self) -> list[ManifoldExpr]:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            count = int(tok.text)
            if count < 1:
                raise DomainError(f"summand count must be >= 1 (got {count})", position=tok.pos)
            self.expect("*", "'*'")
            prim = self.parse_primary()
            return [prim] * count
        return [self.parse_primary()]

    def parse_primary(self) -> ManifoldExpr:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            inner = self.parse_expr()
            self.expect(")", "')'")
            return inner
        if tok.kind == "ident" and tok.text == "reverse":
            self.advance()
            self.expect("(", "'('")
            inner = self.parse_expr()
            self.expect(")", "')'")
            return Reverse(inner)
        if tok.kind == "ident":
            return self.parse_atom()
        raise ParseError(
            f"expected an atom, '(' or 'reverse', found {_show(tok)}",
            tok.pos,
            expected=("atom", "'('", "'reverse'"),
        )

    def parse_atom(self) -> ManifoldExpr:
        tok = self.advance()
        name, pos = tok.text, tok.pos
        try:
            atom = self._atom_body(name, pos)
        except DomainError as err:
            if err.position is None:
                raise DomainError(err.message, position=pos) from None
            raise
        if self.peek().kind == "~":
            self.advance()
            return Reverse(atom)
        return atom

    def _atom_body(self, name: str, pos: int) -> Atom:
        if name in _SIMPLE_ATOMS:
            return Atom(_SIMPLE_ATOMS[name])
        if name == "K3":
            return algebra.K3
        if name == "Hyp":
            self.expect("(", "'('")
            d = int(self.expect("int", "integer").text)
            self.expect(")", "')'")
            return algebra.hypersurface(d)
        if name == "Cover":
            self.expect("(", "'('")
            p = int(self.expect("int", "integer").text)
            self.expect(",", "','")
            d = int(self.expect("int", "integer").text)
            self.expect(")", "')'")
            return algebra.cyclic_cover(p, d)
        if name == "Surface":
            return self._surface_body(pos)
        raise ParseError(f"unknown atom name {name!r}", pos, expected=_ATOM_NAMES)

    def _surface_body(self, pos: int) -> Atom:
        self.expect("(", "'('")
        seen: dict[str, object] = {}
        while True:
            key_tok = self.expect("ident", "surface key")
            key = key_tok.text
            if key not in _SURFACE_KEYS:
                raise ParseError(
                    f"unknown surface key {key!r}", key_tok.pos, expected=_SURFACE_KEYS
                )
            if key in seen:
                raise ParseError(f"duplicate surface key {key!r}", key_tok.pos)
            self.expect("=", "'='")
            seen[key] = self._surface_value(key)
            if self.peek().kind == ",":
                self.advance()
                continue
            self.expect(")", "')'")
            break
        if "c1sq" not in seen or "chi_h" not in seen:
            raise DomainError("Surface(..) requires c1sq and chi_h", position=pos)
        spec = SurfaceSpec(
            c1sq=seen["c1sq"],
            chi_h=seen["chi_h"],
            minimal=seen.get("minimal", False),
            ample_K=seen.get("ample_K", False),
            spin=seen.get("spin", TriState.UNKNOWN),
            simply_connected=seen.get("sc", True),
        )
        return algebra.surface_atom(spec)

    def _surface_value(self, key: str):
        tok = self.peek()
        if key in ("c1sq", "chi_h"):
            return int(self.expect("int", "integer").text)
        word = self.expect("ident", "yes|no" + ("|unknown" if key == "spin" else "")).text
        if key == "spin":
            try:
                return TriState(word)
            except ValueError:
                raise ParseError(
                    f"spin must be yes, no or unknown (got {word!r})", tok.pos
                ) from None
        if word == "yes":
            return True
        if word == "no":
            return False
        raise ParseError(f"{key} must be yes or no (got {word!r})", tok.pos)


def parse(text: str) -> ManifoldExpr:
    """Parse a DSL string and return its canonical form.

    Raises ParseError for syntax violations (with a byte offset) and
    DomainError for syntactically valid atoms with invalid parameters.
    """
    parser = _Parser(_tokenize(text))
    expr = parser.parse_expr()
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise ParseError(
            f"expected '#' or end of input, found {_show(trailing)}",
            trailing.pos,
            expected=("'#'", "end of input"),
        )
    return algebra.normalize(expr)


def _format_surface(spec: SurfaceSpec) -> str:
    fields = [f"c1sq={spec.c1sq}", f"chi_h={spec.chi_h}"]
    if spec.minimal:
        fields.append("minimal=yes")
    if spec.ample_K:
        fields.append("ample_K=yes")
    if spec.spin is not TriState.UNKNOWN:
        fields.append(f"spin={spec.spin.value}")
    if not spec.simply_connected:
        fields.append("sc=no")
    return "Surface(" + ", ".join(fields) + ")"


def _format_atom(a: Atom) -> str:
    if a.kind is AtomKind.HYPERSURFACE:
        body = "K3" if a.degree == 4 else f"Hyp({a.degree})"
    elif a.kind is AtomKind.CYCLIC_COVER:
        body = f"Cover({a.cover_p},{a.cover_d})"
    elif a.kind is AtomKind.SURFACE:
        body = _format_surface(a.surface)
    else:
        body = a.kind.value
    return f"reverse({body})" if a.reversed else body


def format_expr(e: ManifoldExpr) -> str:
    """Render the canonical form of ``e``; ``parse(format_expr(e))`` gives it back."""
    n = algebra.normalize(e)
    if isinstance(n, Atom):
        return _format_atom(n)
    pieces = []
    for atom, group in groupby(n.parts):
        count = len(list(group))
        text = _format_atom(atom)
        pieces.append(text if count == 1 else f"{count}*{text}")
    return " # ".join(pieces)
