"""Text to polynomial.

Grammar (whitespace insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | NAME | '(' expr ')'

``NAME`` is ``[a-zA-Z][a-zA-Z0-9]*``.  Multiplication must be explicit, so
``y1y2`` is the single name ``y1y2``.  The right operand of ``/`` must be a
nonzero constant, which is how rational literals such as ``7/3`` are
written.  Exponents are nonnegative integer literals.  Rational results are
scaled by the least common denominator of their coefficients.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import ValidationError
from .polyring import CANONICAL_VARS, MAX_EXPONENT, Polynomial, Ring, derivative, exact_div, gcd

#: Names the formulae use internally; never valid as user parameters.
RESERVED = frozenset(CANONICAL_VARS) | {"u"}

ROLES = ("implicit-curve", "param-numerator-x", "param-numerator-y", "param-denominator")


class ParseError(ValidationError):
    def __init__(self, position: int, message: str, text: str = ""):
        self.position = position
        self.message = message
        self.text = text
        super().__init__(f"parse error at position {position}: {message}")


class UnknownVariable(ValidationError):
    def __init__(self, name: str, allowed: Iterable[str] = ()):
        self.name = name
        allowed = sorted(allowed)
        hint = f" (allowed: {', '.join(allowed)})" if allowed else ""
        super().__init__(f"unknown variable {name!r}{hint}")


class CommonFactor(ValidationError):
    def __init__(self, factor: Polynomial):
        self.factor = factor
        super().__init__(f"X, Y and W share the nonconstant factor {factor}")


class ZeroDenominator(ValidationError):
    def __init__(self):
        super().__init__("the denominator W of the parametrization is zero")


@dataclass(frozen=True)
class ExprSource:
    text: str
    role: str = "implicit-curve"

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown expression role {self.role!r}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(pos, f"unexpected character {text[pos]!r}", text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


def scan_names(text: str) -> list[str]:
    """Variable names in order of first appearance."""
    seen: dict[str, None] = {}
    for kind, value, _ in tokenize(text):
        if kind == "name":
            seen.setdefault(value, None)
    return list(seen)


# Rational polynomials during parsing: {key: Fraction} over the target ring.


class _Parser:
    def __init__(self, text: str, ring: Ring, allowed: frozenset[str]):
        self.text = text
        self.ring = ring
        self.allowed = allowed
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(tok[2], message, self.text)

    def check_degree(self, deg, tok):
        if deg > MAX_EXPONENT:
            raise self.error(f"degree {deg} exceeds the supported maximum {MAX_EXPONENT}", tok)

    def parse(self) -> dict:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}")
        return value

    def expr(self):
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            acc = _add(acc, rhs, -1 if op == "-" else 1)
        return acc

    def term(self):
        acc = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            optok = self.take()
            rhs = self.unary()
            if optok[1] == "*":
                self.check_degree(_tdeg(self.ring, acc) + _tdeg(self.ring, rhs), optok)
                acc = _mul(acc, rhs)
            else:
                if any(rhs):
                    raise self.error("divisor must be a constant", optok)
                c = rhs.get(0, 0)
                if not c:
                    raise self.error("division by zero", optok)
                acc = {k: v / c for k, v in acc.items()}
        return acc

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "-":
            self.take()
            return {k: -v for k, v in self.unary().items()}
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            e = int(tok[1])
            self.check_degree(e * max(_tdeg(self.ring, base), 1), tok)
            result = {0: Fraction(1)}
            for _ in range(e):
                result = _mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            c = Fraction(int(value))
            return {0: c} if c else {}
        if kind == "name":
            if value not in self.allowed:
                raise UnknownVariable(value, self.allowed)
            return {self.ring.var_key(value): Fraction(1)}
        if kind == "op" and value == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected {value!r}", tok)


def _tdeg(ring: Ring, terms: dict) -> int:
    return max((k >> ring._tshift for k in terms), default=0)


def _add(a: dict, b: dict, sign: int) -> dict:
    out = dict(a)
    for k, v in b.items():
        s = out.get(k, 0) + sign * v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _clear(ring: Ring, terms: dict) -> Polynomial:
    den = 1
    for v in terms.values():
        den = lcm(den, v.denominator)
    return Polynomial._make(ring, {k: int(v * den) for k, v in terms.items()})


def _as_source(src) -> ExprSource:
    return src if isinstance(src, ExprSource) else ExprSource(str(src))


def parse_polynomial(src, allowed_vars: Iterable[str] | None = None, ring: Ring | None = None) -> Polynomial:
    """Parse ``src`` (an :class:`ExprSource` or a string) into a polynomial.

    ``allowed_vars`` defaults to ``y1``, ``y2`` plus every non-reserved name
    in the text, which then become parameters of the ring.  A fresh
    canonical ring is built unless ``ring`` is given.
    """
    src = _as_source(src)
    names = scan_names(src.text)
    if allowed_vars is None:
        base = {"t"} if src.role != "implicit-curve" else {"y1", "y2"}
        allowed = frozenset(base | {n for n in names if n not in RESERVED})
    else:
        allowed = frozenset(allowed_vars)
    if ring is None:
        params = [n for n in names if n not in RESERVED and n in allowed]
        ring = Ring.canonical(params)
    for n in names:
        if n in allowed and n not in ring.names:
            raise UnknownVariable(n, ring.names)
    return _clear(ring, _Parser(src.text, ring, allowed).parse())


@dataclass(frozen=True)
class RationalParametrization:
    """``(X/W, Y/W)`` in the variable ``t`` with its normal vector ``(N1, N2)``."""

    X: Polynomial
    Y: Polynomial
    W: Polynomial

    @property
    def ring(self) -> Ring:
        return self.W.ring

    @property
    def N1(self) -> Polynomial:
        W, Y = self.W, self.Y
        return -(W * derivative(Y, "t") - derivative(W, "t") * Y)

    @property
    def N2(self) -> Polynomial:
        W, X = self.W, self.X
        return W * derivative(X, "t") - derivative(W, "t") * X


def parse_parametrization(x_num, y_num, denom, allowed_vars: Iterable[str] | None = None,
                          reduce: bool = False) -> RationalParametrization:
    """Parse the three components of ``(X/W, Y/W)`` into one shared ring.

    With ``reduce`` a common factor of X, Y, W is divided out instead of
    raising :class:`CommonFactor`.
    """
    roles = ("param-numerator-x", "param-numerator-y", "param-denominator")
    sources = [s if isinstance(s, ExprSource) else ExprSource(str(s), r)
               for s, r in zip((x_num, y_num, denom), roles)]
    names: dict[str, None] = {}
    for s in sources:
        for n in scan_names(s.text):
            names.setdefault(n, None)
    if allowed_vars is None:
        allowed = frozenset({"t"} | {n for n in names if n not in RESERVED})
    else:
        allowed = frozenset(allowed_vars)
    ring = Ring.canonical([n for n in names if n not in RESERVED and n in allowed])
    X, Y, W = (parse_polynomial(s, allowed, ring) for s in sources)
    return make_parametrization(X, Y, W, reduce=reduce)


def make_parametrization(X: Polynomial, Y: Polynomial, W: Polynomial,
                         reduce: bool = False) -> RationalParametrization:
    if W.is_zero():
        raise ZeroDenominator()
    g = gcd(gcd(X, Y), W)
    if not g.is_constant():
        if not reduce:
            raise CommonFactor(g)
        X, Y, W = exact_div(X, g), exact_div(Y, g), exact_div(W, g)
    return RationalParametrization(X, Y, W)
