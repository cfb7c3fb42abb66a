"""
Parser for systems "f ; g" with exact rational coefficients.

Grammar (whitespace-insensitive):
    system := poly ";" poly
    poly   := [sign] term (sign term)*
    term   := coef [["*"] factor ("*" factor)*] | factor ("*" factor)*
    coef   := number ["/" number] | "(" [sign] number ["/" number] ")"
    factor := ("x" | "y") ["^" exponent]
    exponent := [sign] digits | "(" [sign] digits ")"
Decimals are converted exactly (0.25 -> 1/4). A JSON body
{"f": ..., "g": ..., "options": {...}} is accepted too, where f and g are
either expression text or lists of [coefficient, [a, b]].
"""

import json
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from algebra.errors import FewnomialError
from bivar.sparse_poly import SparsePolyQ2

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?|\.\d+)|([xy])|([-+*/^();]))")


class SystemSyntaxError(FewnomialError):
    """Malformed system text; position is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class GNotTrinomial(FewnomialError):
    """g does not have exactly three terms."""


class NonIntegerExponent(FewnomialError):
    """An exponent is not an integer."""


@dataclass(frozen=True)
class SystemSpec:
    f: SparsePolyQ2
    g: SparsePolyQ2
    options: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @property
    def t(self) -> int:
        return len(self.f)

    def to_dict(self):
        return {"f": render_polynomial(self.f), "g": render_polynomial(self.g), "options": dict(self.options)}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    position: int


def _tokenize(text: str, offset: int = 0) -> List[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SystemSyntaxError(f"unexpected character {text[bad]!r}", offset + bad)
        if m.group(1) is not None:
            tokens.append(_Token("number", m.group(1), offset + m.start(1)))
        elif m.group(2) is not None:
            tokens.append(_Token("var", m.group(2), offset + m.start(2)))
        else:
            tokens.append(_Token(m.group(3), m.group(3), offset + m.start(3)))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over one polynomial's tokens."""

    def __init__(self, tokens: List[_Token], end: int):
        self.tokens = tokens
        self.i = 0
        self.end = end

    def peek(self) -> Optional[_Token]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: Optional[str] = None) -> _Token:
        tok = self.peek()
        if tok is None:
            raise SystemSyntaxError("unexpected end of input", self.end)
        if kind is not None and tok.kind != kind:
            raise SystemSyntaxError(f"expected {kind}, found {tok.text!r}", tok.position)
        self.i += 1
        return tok

    def polynomial(self) -> List[Tuple[Fraction, Tuple[Fraction, Fraction]]]:
        terms = []
        sign, operator = 1, None
        tok = self.peek()
        if tok is not None and tok.kind in "+-":
            sign, operator = (-1 if tok.kind == "-" else 1), self.take()
        while True:
            tok = self.peek()
            if tok is None or tok.kind not in ("number", "var", "("):
                where = operator.position if operator is not None else (tok.position if tok else self.end)
                what = f"dangling operator {operator.text!r}" if operator is not None else "expected a term"
                raise SystemSyntaxError(what, where)
            coefficient, exponent = self.term()
            terms.append((sign * coefficient, exponent))
            tok = self.peek()
            if tok is None:
                return terms
            if tok.kind not in "+-":
                raise SystemSyntaxError(f"unexpected {tok.text!r}", tok.position)
            operator = self.take()
            sign = -1 if operator.kind == "-" else 1

    def number(self) -> Fraction:
        value = Fraction(self.take("number").text)
        tok = self.peek()
        if tok is not None and tok.kind == "/":
            self.take()
            den = Fraction(self.take("number").text)
            if den == 0:
                raise SystemSyntaxError("division by zero", tok.position)
            value /= den
        return value

    def coefficient(self) -> Fraction:
        tok = self.peek()
        if tok.kind == "number":
            return self.number()
        self.take("(")
        sign = 1
        inner = self.peek()
        if inner is not None and inner.kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        value = sign * self.number()
        self.take(")")
        return value

    def exponent(self) -> Fraction:
        tok = self.peek()
        wrapped = tok is not None and tok.kind == "("
        if wrapped:
            self.take()
        sign = 1
        tok = self.peek()
        if tok is not None and tok.kind in "+-":
            sign = -1 if self.take().kind == "-" else 1
        start = self.peek()
        value = sign * self.number() if start is not None and start.kind == "number" else None
        if value is None:
            raise SystemSyntaxError("expected an exponent", start.position if start else self.end)
        if wrapped:
            self.take(")")
        if value.denominator != 1:
            raise NonIntegerExponent(f"exponent {value} at position {start.position} is not an integer")
        return value

    def factor(self, exponent: List[Fraction]):
        var = self.take("var")
        power = Fraction(1)
        tok = self.peek()
        if tok is not None and tok.kind == "^":
            self.take()
            power = self.exponent()
        exponent[0 if var.text == "x" else 1] += power

    def term(self) -> Tuple[Fraction, Tuple[Fraction, Fraction]]:
        coefficient = Fraction(1)
        exponent = [Fraction(0), Fraction(0)]
        tok = self.peek()
        if tok.kind in ("number", "("):
            coefficient = self.coefficient()
            tok = self.peek()
            if tok is not None and tok.kind == "*":
                self.take()
                tok = self.peek()
                if tok is None or tok.kind != "var":
                    raise SystemSyntaxError("expected x or y after '*'", tok.position if tok else self.end)
        while True:
            tok = self.peek()
            if tok is None or tok.kind != "var":
                break
            self.factor(exponent)
            tok = self.peek()
            if tok is not None and tok.kind == "*":
                self.take()
                nxt = self.peek()
                if nxt is None or nxt.kind != "var":
                    raise SystemSyntaxError("expected x or y after '*'", nxt.position if nxt else self.end)
        return coefficient, (exponent[0], exponent[1])


def parse_polynomial(text: str, offset: int = 0) -> SparsePolyQ2:
    tokens = _tokenize(text, offset)
    if not tokens:
        raise SystemSyntaxError("empty polynomial", offset)
    parser = _Parser(tokens, offset + len(text))
    terms = parser.polynomial()
    return SparsePolyQ2.from_terms(terms)


def _structured_polynomial(value: Any, name: str, position: int) -> SparsePolyQ2:
    if isinstance(value, str):
        return parse_polynomial(value)
    if not isinstance(value, list):
        raise SystemSyntaxError(f"{name} must be a string or a list of [coefficient, [a, b]] terms", position)
    terms = []
    for item in value:
        try:
            coefficient, (a, b) = item
            coefficient, exponent = Fraction(coefficient), (Fraction(a), Fraction(b))
        except (TypeError, ValueError, ZeroDivisionError):
            raise SystemSyntaxError(f"malformed term {item!r} in {name}, expected [coefficient, [a, b]]", position)
        if any(e.denominator != 1 for e in exponent):
            raise NonIntegerExponent(f"exponent {list(exponent)} of {name} is not an integer")
        terms.append((coefficient, exponent))
    return SparsePolyQ2.from_terms(terms)


def _json_system(text: str) -> SystemSpec:
    try:
        body = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise SystemSyntaxError(f"invalid JSON: {e.msg}", e.pos)
    polys = {}
    for name in ("f", "g"):
        if name not in body:
            raise SystemSyntaxError(f"JSON body has no {name!r} key", len(text))
        polys[name] = _structured_polynomial(body[name], name, max(text.find(f'"{name}"'), 0))
    options = body.get("options", {})
    if not isinstance(options, dict):
        raise SystemSyntaxError("options must be a JSON object", max(text.find('"options"'), 0))
    options = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in options.items()}
    return _check(polys["f"], polys["g"], options)


def _check(f: SparsePolyQ2, g: SparsePolyQ2, options: Dict[str, Any]) -> SystemSpec:
    if len(g) != 3:
        raise GNotTrinomial(f"g has {len(g)} terms after merging, expected 3")
    if len(f) == 0:
        raise SystemSyntaxError("f is identically zero", 0)
    return SystemSpec(f, g, options)


def parse_system(text: str) -> SystemSpec:
    """
    Parse "f ; g" or a JSON body into a SystemSpec.

    Raises:
        SystemSyntaxError: malformed text, with the offending position
        GNotTrinomial: g does not have exactly three terms
        NonIntegerExponent: an exponent is fractional
    """
    stripped = text.strip()
    if stripped.startswith("{"):
        return _json_system(stripped)
    parts = text.split(";")
    if len(parts) != 2:
        position = len(text) if len(parts) < 2 else len(parts[0]) + len(parts[1]) + 1
        raise SystemSyntaxError("expected exactly one ';' between f and g", position)
    f = parse_polynomial(parts[0])
    g = parse_polynomial(parts[1], len(parts[0]) + 1)
    logger.debug("parsed system with %d and %d terms", len(f), len(g))
    return _check(f, g, {})


def _monomial(a: Fraction, b: Fraction) -> str:
    factors = []
    for var, e in (("x", a), ("y", b)):
        if e == 1:
            factors.append(var)
        elif e:
            factors.append(f"{var}^{e}")
    return "*".join(factors)


def render_polynomial(p: SparsePolyQ2) -> str:
    """Text in the parser's grammar; coefficients must be rational."""
    parts = []
    for t in p.terms:
        c = t.coefficient.as_fraction()
        monomial = _monomial(*t.exponent)
        magnitude = abs(c)
        coefficient = f"({magnitude})" if magnitude.denominator != 1 else str(magnitude)
        if monomial and magnitude == 1:
            body = monomial
        elif monomial:
            body = f"{coefficient}*{monomial}"
        else:
            body = coefficient
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"


def render_system(spec: SystemSpec) -> str:
    return f"{render_polynomial(spec.f)} ; {render_polynomial(spec.g)}"
