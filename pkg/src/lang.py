"""
Copyright (c) 2024 Cisco and/or its affiliates.
This software is licensed to you under the terms of the Cisco Sample
Code License, Version 1.1 (the "License"). You may obtain a copy of the
License at
https://developer.cisco.com/docs/licenses
All use of the material herein must be in accordance with the terms of
the License. All rights not expressly granted by the License are
reserved. Unless required by applicable law or agreed to separately in
writing, software distributed under the License is distributed on an "AS
IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
or implied.

Ring expressions:

    expr   := term (('+' | '-') term)*
    term   := '-'? factor ('*'? factor)*
    factor := atom ('^' nat)?
    atom   := 'v' | 'f' | 'd' | 'eta' | 'u'nat | int | 'W[' ints ']' | '(' expr ')'

Juxtaposition multiplies, so "fdv" reads as f*d*v.
"""

__copyright__ = "Copyright (c) 2024 Cisco and/or its affiliates."
__license__ = "Cisco Sample Code License, Version 1.1"

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from pydantic import ValidationError

from coefficients import CoefficientRing, GradedScalar, ring_make
from crring import SHAPES, CRElement, Word, build_element, cr_ring
from errors import DocumentError, ParseError
from schemas import ElementDocument, TermRecord

ATOM_STARTS = ("GEN", "ETA", "TOWER", "NUM", "WITT", "(")
DIGITS = "0123456789"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """
    Split an expression into tokens; every token keeps its offset in the input
    :param text: Expression
    :return: Tokens, terminated by an EOF token
    """
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in DIGITS:
            start = i
            while i < len(text) and text[i] in DIGITS:
                i += 1
            tokens.append(Token("NUM", text[start:i], start))
        elif ch in "vfd":
            tokens.append(Token("GEN", ch, i))
            i += 1
        elif text.startswith("eta", i):
            tokens.append(Token("ETA", "eta", i))
            i += 3
        elif ch == "u":
            start = i
            i += 1
            while i < len(text) and text[i] in DIGITS:
                i += 1
            if i == start + 1:
                raise ParseError("expected digits after `u`", i)
            tokens.append(Token("TOWER", text[start:i], start))
        elif ch == "W":
            tokens.append(Token("WITT", ch, i))
            i += 1
        elif ch in "+-*^()[],":
            tokens.append(Token(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character `{ch}`", i)
    tokens.append(Token("EOF", "", len(text)))
    return tokens


# Expression tree; positions are informational and excluded from equality
@dataclass(frozen=True)
class Generator:
    name: str
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class IntLiteral:
    value: int
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class WittLiteral:
    coords: Tuple[int, ...]
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EtaLiteral:
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TowerLiteral:
    index: int
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Group:
    inner: object
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Power:
    base: object
    exponent: int
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Product:
    left: object
    right: object
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Negation:
    operand: object
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    left: object
    right: object
    position: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Difference:
    left: object
    right: object
    position: int = field(default=0, compare=False)


class Parser:
    """
    Recursive-descent parser over the token list. Literals are checked against the ring as they are read.
    """

    def __init__(self, text: str, ring: Optional[CoefficientRing]):
        self.tokens = tokenize(text)
        self.ring = ring
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            raise ParseError(f"expected {what}", self.current.position)
        return self.advance()

    def parse(self):
        if self.current.kind == "EOF":
            raise ParseError("empty expression", 0)
        node = self.expr()
        if self.current.kind != "EOF":
            raise ParseError(f"unexpected `{self.current.text}`", self.current.position)
        return node

    def expr(self):
        node = self.term()
        while self.current.kind in ("+", "-"):
            op = self.advance()
            right = self.term()
            node = Sum(node, right, op.position) if op.kind == "+" else Difference(node, right, op.position)
        return node

    def term(self):
        if self.current.kind == "-":
            op = self.advance()
            return Negation(self.term(), op.position)
        node = self.factor()
        while True:
            if self.current.kind == "*":
                self.advance()
            elif self.current.kind not in ATOM_STARTS:
                break
            position = self.current.position
            node = Product(node, self.factor(), position)
        return node

    def factor(self):
        node = self.atom()
        if self.current.kind == "^":
            caret = self.advance()
            exponent = self.expect("NUM", "a natural-number exponent")
            node = Power(node, int(exponent.text), caret.position)
        return node

    def atom(self):
        token = self.current
        if token.kind == "GEN":
            self.advance()
            return Generator(token.text, token.position)
        if token.kind == "NUM":
            self.advance()
            return IntLiteral(int(token.text), token.position)
        if token.kind == "ETA":
            self.advance()
            return EtaLiteral(token.position)
        if token.kind == "TOWER":
            self.advance()
            node = TowerLiteral(int(token.text[1:]), token.position)
            self._check(lambda: self.ring.tower_literal(node.index), token.position)
            return node
        if token.kind == "WITT":
            return self.witt_literal()
        if token.kind == "(":
            self.advance()
            inner = self.expr()
            self.expect(")", "`)`")
            return Group(inner, token.position)
        if token.kind == "EOF":
            raise ParseError("unexpected end of input", token.position)
        raise ParseError(f"unexpected `{token.text}`", token.position)

    def witt_literal(self) -> WittLiteral:
        start = self.advance().position
        self.expect("[", "`[` after W")
        coords = [self._signed_int()]
        while self.current.kind == ",":
            self.advance()
            coords.append(self._signed_int())
        self.expect("]", "`,` or `]`")
        node = WittLiteral(tuple(coords), start)
        if self.ring is not None:
            self._check(lambda: self.ring.witt_literal(node.coords), start)
        return node

    def _signed_int(self) -> int:
        sign = 1
        if self.current.kind == "-":
            self.advance()
            sign = -1
        return sign * int(self.expect("NUM", "an integer coordinate").text)

    @staticmethod
    def _check(build, position: int):
        try:
            build()
        except ValueError as e:
            raise ParseError(str(e), position)


def parse(text: str, ring: CoefficientRing):
    """
    Parse an expression over a coefficient ring
    :param text: Expression text
    :param ring: Ring the literals must belong to
    :return: Expression tree
    """
    return Parser(text, ring).parse()


def parse_witt_coords(text: str) -> Tuple[int, ...]:
    """
    Coordinates of a bare Witt literal such as `W[1,-2,0]`
    """
    parser = Parser(text, None)
    if parser.current.kind != "WITT":
        raise ParseError("expected a Witt literal W[...]", parser.current.position)
    node = parser.witt_literal()
    if parser.current.kind != "EOF":
        raise ParseError(f"unexpected `{parser.current.text}`", parser.current.position)
    return node.coords


def _scalar_of(node, ring: CoefficientRing) -> GradedScalar:
    if isinstance(node, IntLiteral):
        return ring.from_int(node.value)
    if isinstance(node, EtaLiteral):
        return ring.eta()
    if isinstance(node, TowerLiteral):
        return ring.tower_literal(node.index)
    return ring.witt_literal(node.coords)


def flatten(node, ring: CoefficientRing) -> List[Tuple[int, Word]]:
    """
    Expand an expression into a signed sum of words
    """
    if isinstance(node, Generator):
        return [(1, Word((node.name,)))]
    if isinstance(node, (IntLiteral, EtaLiteral, TowerLiteral, WittLiteral)):
        return [(1, Word((_scalar_of(node, ring),)))]
    if isinstance(node, Group):
        return flatten(node.inner, ring)
    if isinstance(node, Negation):
        return [(-sign, w) for sign, w in flatten(node.operand, ring)]
    if isinstance(node, Sum):
        return flatten(node.left, ring) + flatten(node.right, ring)
    if isinstance(node, Difference):
        return flatten(node.left, ring) + [(-sign, w) for sign, w in flatten(node.right, ring)]
    if isinstance(node, Product):
        return [(s1 * s2, Word(w1.letters + w2.letters))
                for s1, w1 in flatten(node.left, ring) for s2, w2 in flatten(node.right, ring)]
    if isinstance(node, Power):
        result = [(1, Word())]
        base = flatten(node.base, ring)
        for _ in range(node.exponent):
            result = [(s1 * s2, Word(w1.letters + w2.letters)) for s1, w1 in result for s2, w2 in base]
        return result
    raise TypeError(f"Unknown expression node {node!r}")


def eval_ast(node, ring: CoefficientRing) -> CRElement:
    """
    Normal form of an expression: the signed sum of its words, each evaluated letter by letter
    """
    R = cr_ring(ring)
    total = R.zero
    for sign, w in flatten(node, ring):
        value = R.eval_word(w)
        total = R.add(total, value) if sign > 0 else R.sub(total, value)
    return total


def evaluate(text: str, ring: CoefficientRing) -> CRElement:
    return eval_ast(parse(text, ring), ring)


def _wrap(text: str) -> str:
    return f"({text})" if " " in text else text


def _power(name: str, index: int) -> str:
    return name if index == 1 else f"{name}^{index}"


def format_term(shape: str, index: int, coeff: GradedScalar) -> str:
    ring = coeff.ring
    m = ring.integer_value(coeff)
    if shape == "v" and index == 0:
        return ring.format_scalar(coeff)

    if shape == "v":
        body = _power("v", index)
    elif shape == "dv":
        body = "d" if index == 0 else "d*" + _power("v", index)
    elif shape == "f":
        body = _power("f", index)
    else:
        body = _power("f", index) + "*d"

    if m == 1:
        return body
    if m is not None:
        return f"{m}*{body}"
    scalar = _wrap(ring.format_scalar(coeff))
    return f"{body}*{scalar}" if shape in ("v", "dv") else f"{scalar}*{body}"


def format_element(e: CRElement) -> str:
    """
    Canonical text: v-family terms by ascending index, then d v, f and f d
    :param e: Element
    :return: Text that parses back to the same element
    """
    if e.is_zero():
        return "0"
    return " + ".join(format_term(shape, index, coeff) for shape, index, coeff in e.terms())


def encode(e: CRElement) -> ElementDocument:
    """
    Structured document with the ring descriptor embedded
    """
    families = {
        shape: [TermRecord(shape=shape, index=index, coefficient=e.ring.encode(coeff))
                for index, coeff in getattr(e, shape)]
        for shape in SHAPES
    }
    return ElementDocument(ring=e.ring.descriptor, **families)


def decode(document) -> CRElement:
    """
    Element from a structured document (ElementDocument, dict or JSON text)
    :param document: Document
    :return: CRElement
    """
    try:
        if isinstance(document, str):
            document = ElementDocument.model_validate_json(document)
        elif isinstance(document, dict):
            document = ElementDocument.model_validate(document)
    except ValidationError as e:
        raise DocumentError(f"Malformed element document: {e}")

    ring = ring_make(document.ring)
    terms = []
    for shape in SHAPES:
        seen = set()
        for record in getattr(document, shape):
            if record.shape != shape:
                raise DocumentError(f"Term of shape `{record.shape}` listed under `{shape}`")
            if shape in ("f", "fd") and record.index < 1:
                raise DocumentError(f"`{shape}` terms need index >= 1, got {record.index}")
            if record.index in seen:
                raise DocumentError(f"Duplicate `{shape}` term at index {record.index}")
            seen.add(record.index)
            try:
                terms.append((shape, record.index, ring.decode(record.coefficient)))
            except ValueError as e:
                raise DocumentError(f"Bad coefficient for `{shape}` index {record.index}: {e}")
    return build_element(ring, terms)


def parse_scalar(text: str, ring: CoefficientRing) -> GradedScalar:
    """
    Read a coefficient expression (no generators), e.g. `W[1,2]`, `eta`, `1 + u1`
    """
    e = evaluate(text, ring)
    if e.dv or e.f or e.fd or any(index for index, _ in e.v):
        raise ParseError("expected a scalar expression without v, f or d", 0)
    return e.coefficient("v", 0)
