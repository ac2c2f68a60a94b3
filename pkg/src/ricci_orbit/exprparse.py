"""Shorthand parser for potential and density inputs.

Accepted potential forms:
  * JSON: {"f": [...], "h": [...]} with coefficients as ints or "p/q" strings
  * keywords: FS (round metric, log(1+x)), HYP (hyperbolic disc, log(1/(1-x)))
  * expressions: '(1+x)^4', '1 + a*x + x^2 @ a=3/2', '1 + 3/2*x + x^2'
  * a path to a file holding any of the above

Within expressions, '/' is only valid inside a rational literal 'p/q';
potentials with a polynomial denominator use the JSON form.  The symbol 'a'
must be bound, either by an '@ a=value' suffix or by the caller.
"""

from __future__ import annotations

import json
import os
import re
from fractions import Fraction
from typing import Optional

from .polyalg import Poly, RatFunc, as_fraction
from .geometry import RadialDensity, RadialLogPotential


class InputError(ValueError):
    """Malformed user input (CLI exit code 2)."""


_TOKEN = re.compile(r"\s*(\d+/\d+|\d+(?:\.\d+)?|[+\-*^()]|x|a)")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise InputError(f"cannot read expression near {text[pos:pos + 12]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    return tokens


class _Parser:
    # grammar: expr := term (('+'|'-') term)*
    #          term := factor ('*' factor)*
    #          factor := atom ('^' INT)?
    #          atom := NUMBER | 'x' | 'a' | '(' expr ')' | '-' atom
    def __init__(self, tokens: list[str], a_value: Optional[Fraction]):
        self.tokens = tokens
        self.pos = 0
        self.a_value = a_value

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise InputError("unexpected end of expression")
        self.pos += 1
        return tok

    def parse(self) -> Poly:
        p = self.expr()
        if self.peek() is not None:
            raise InputError(f"trailing tokens in expression: {self.peek()!r}")
        return p

    def expr(self) -> Poly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek() == "*":
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Poly:
        p = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise InputError(f"exponent must be a nonnegative integer, got {tok!r}")
            p = p ** int(tok)
        return p

    def atom(self) -> Poly:
        tok = self.take()
        if tok == "(":
            p = self.expr()
            if self.take() != ")":
                raise InputError("missing ')'")
            return p
        if tok == "-":
            return -self.atom()
        if tok == "+":
            return self.atom()
        if tok == "x":
            return Poly.x()
        if tok == "a":
            if self.a_value is None:
                raise InputError("symbol 'a' needs a binding: append '@ a=p/q' or pass --a")
            return Poly.constant(self.a_value)
        try:
            return Poly.constant(as_fraction(tok))
        except ValueError:
            raise InputError(f"unexpected token {tok!r}") from None


_KEYWORDS = {
    "FS": (Poly((1, 1)), Poly((1,))),
    "HYP": (Poly((1,)), Poly((1, -1))),
}


def _maybe_read_file(text: str) -> str:
    candidate = text.strip()
    if len(candidate) < 4096 and os.path.isfile(candidate):
        with open(candidate, "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_polynomial(text: str, a: Optional[Fraction] = None) -> Poly:
    """Parse a polynomial expression in x, with 'a' bound to the given value
    or via an '@ a=value' suffix."""
    text = text.strip()
    if "@" in text:
        body, binding = text.split("@", 1)
        binding = binding.strip()
        if not binding.startswith("a"):
            raise InputError("binding must look like '@ a=p/q'")
        _, _, value = binding.partition("=")
        bound = as_fraction(value.strip())
        if a is not None and a != bound:
            raise InputError("conflicting values for 'a' (flag and '@' binding)")
        a = bound
        text = body.strip()
    return _Parser(_tokenize(text), a).parse()


def parse_potential(text: str, a: Optional[Fraction] = None) -> RadialLogPotential:
    text = _maybe_read_file(text).strip()
    if not text:
        raise InputError("empty potential")
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad potential JSON: {exc}") from None
        try:
            return RadialLogPotential.from_json(data)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad potential: {exc}") from None
    if text in _KEYWORDS:
        f, h = _KEYWORDS[text]
        return RadialLogPotential(f, h)
    f = parse_polynomial(text, a)
    try:
        return RadialLogPotential(f)
    except ValueError as exc:
        raise InputError(f"bad potential: {exc}") from None


def parse_density(text: str) -> RadialDensity:
    text = _maybe_read_file(text).strip()
    if not text:
        raise InputError("empty density")
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad density JSON: {exc}") from None
        try:
            return RadialDensity.from_json(data)
        except (KeyError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"bad density: {exc}") from None
    if text == "FS":
        return RadialDensity(RatFunc(Poly((1,)), Poly((1, 1)) ** 2))
    raise InputError("densities use JSON {\"num\": [...], \"den\": [...]} or the FS keyword")
