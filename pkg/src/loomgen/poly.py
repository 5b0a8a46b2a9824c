"""Multivariate polynomials over Q, the system parser, and binomial bookkeeping.

Input grammar (comments run from ``#`` to end of line)::

    system := "vars" ident+ ";" (poly ";")*
    poly   := term (("+" | "-") term)*
    term   := [coeff] [monos]        coeff: integer or "a/b"
                                     monos: "x^2 y z^3", juxtaposition multiplies

An identifier that is not a declared variable is split into declared names
when that can be done in exactly one way, so ``xy^3`` reads as ``x y^3``
when ``x`` and ``y`` are declared.  An optional ``*`` between factors is
accepted.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NotPureDifference, ParseError, UnknownVariable, ZeroVector

Exponents = tuple[int, ...]
ExponentVector = tuple[int, ...]

DEFAULT_MAX_EXP = 2**31 - 1


def _grlex_key(exps: Exponents):
    return (sum(exps), exps)


class Polynomial:
    """Immutable polynomial in a fixed number of variables.

    Terms are kept sorted by descending graded-lex order of their
    monomials, so equal polynomials compare and hash equal.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponents, Fraction] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Fraction] = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise DimensionMismatch(f"monomial {exps} in a ring with {nvars} variables")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(
            self,
            "terms",
            tuple(sorted(((e, c) for e, c in acc.items() if c != 0),
                         key=lambda t: _grlex_key(t[0]), reverse=True)),
        )

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Polynomial:
        return cls(len(exps), {tuple(exps): Fraction(c)})

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.terms))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {dict(self.terms)!r})"

    def __bool__(self):
        return bool(self.terms)

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionMismatch("polynomials live in rings of different dimension")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        return Polynomial(self.nvars, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, [(e, -c) for e, c in self.terms])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        acc: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise DimensionMismatch(f"point of length {len(point)} for {self.nvars} variables")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for x, k in zip(pt, exps):
                if k:
                    term *= x**k
            total += term
        return total

    def substitute_linear(self, M: Sequence[Sequence]) -> Polynomial:
        """Return ``q`` with ``q(x) = p(M x)`` for a square matrix ``M``."""
        if len(M) != self.nvars or any(len(row) != self.nvars for row in M):
            raise DimensionMismatch("substitution matrix must be nvars x nvars")
        n = self.nvars
        images = [
            Polynomial(n, {tuple(int(j == k) for j in range(n)): Fraction(a) for k, a in enumerate(row)})
            for row in M
        ]
        result = Polynomial(n)
        for exps, c in self.terms:
            term = Polynomial.constant(n, c)
            for img, k in zip(images, exps):
                if k:
                    term = term * img**k
            result = result + term
        return result

    def format(self, names: Sequence[str]) -> str:
        if len(names) != self.nvars:
            raise DimensionMismatch("wrong number of variable names")
        if not self.terms:
            return "0"
        out = []
        for i, (exps, c) in enumerate(self.terms):
            mono = " ".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, exps) if k)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)


@dataclass(frozen=True)
class PureDifferenceBinomial:
    """The polynomial ``x^alpha - x^beta`` with ``alpha != beta``."""

    alpha: Exponents
    beta: Exponents

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise DimensionMismatch("alpha and beta differ in length")
        if any(k < 0 for k in self.alpha + self.beta):
            raise ValueError("exponents must be natural numbers")
        if self.alpha == self.beta:
            raise NotPureDifference("x^a - x^a is the zero polynomial")

    @property
    def nvars(self) -> int:
        return len(self.alpha)

    def polynomial(self) -> Polynomial:
        return Polynomial(self.nvars, [(self.alpha, 1), (self.beta, -1)])

    def is_canonical(self) -> bool:
        return all(min(a, b) == 0 for a, b in zip(self.alpha, self.beta))

    def format(self, names: Sequence[str]) -> str:
        return self.polynomial().format(names)


def classify_pure_difference(p: Polynomial) -> PureDifferenceBinomial:
    """Strip the scalar from ``c (x^a - x^b)`` and return ``(a, b)``.

    Orientation is chosen so that the exponent vector ``a - b`` has a
    positive first non-zero entry.
    """
    if len(p.terms) != 2:
        raise NotPureDifference(f"expected two terms, found {len(p.terms)}")
    (e1, c1), (e2, c2) = p.terms
    if c1 != -c2:
        raise NotPureDifference(f"coefficients {c1} and {c2} are not negatives of each other")
    alpha, beta = e1, e2
    lead = next(a - b for a, b in zip(alpha, beta) if a != b)
    if lead < 0:
        alpha, beta = beta, alpha
    return PureDifferenceBinomial(alpha, beta)


def exponent_vector(b: PureDifferenceBinomial) -> ExponentVector:
    return tuple(a - c for a, c in zip(b.alpha, b.beta))


def canonical_binomial(v: Sequence[int]) -> PureDifferenceBinomial:
    if not any(v):
        raise ZeroVector("the zero vector has no canonical binomial")
    plus = tuple(max(x, 0) for x in v)
    minus = tuple(p - x for p, x in zip(plus, v))
    return PureDifferenceBinomial(plus, minus)


def is_primitive(v: Sequence[int]) -> bool:
    if not any(v):
        raise ZeroVector("primitivity is undefined for the zero vector")
    return reduce(gcd, v, 0) == 1


def max_exponent() -> int:
    raw = os.environ.get("LOOMGEN_MAX_EXP")
    return int(raw) if raw else DEFAULT_MAX_EXP


# -- parser -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>\#[^\n]*)"
    r"|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[;+\-^/*])"
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, m.start() - start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - start + 1))
    return toks


def _split_identifier(word: str, names: Sequence[str]) -> list[str] | None:
    # All ways to write `word` as a concatenation of declared names.
    ways: list[list[str]] = []

    def go(rest, acc):
        if len(ways) > 1:
            return
        if not rest:
            ways.append(acc)
            return
        for n in names:
            if rest.startswith(n):
                go(rest[len(n):], acc + [n])

    go(word, [])
    return ways[0] if len(ways) == 1 else None


class _Parser:
    def __init__(self, text: str, max_exp: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.max_exp = max_exp
        self.names: list[str] = []

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        raise cls(msg, tok.line, tok.col)

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.error(f"expected {text!r}, found {t.text or 'end of input'!r}")
        return self.take()

    def system(self):
        t = self.peek()
        if t.kind != "ident" or t.text != "vars":
            self.error("a system must start with 'vars'")
        self.take()
        while self.peek().kind == "ident":
            tok = self.take()
            if tok.text in self.names:
                self.error(f"variable {tok.text!r} declared twice", tok)
            self.names.append(tok.text)
        if not self.names:
            self.error("'vars' needs at least one variable name")
        self.expect(";")
        polys = []
        while self.peek().kind != "eof":
            polys.append(self.poly())
            self.expect(";")
        return list(self.names), polys

    def poly(self) -> Polynomial:
        n = len(self.names)
        sign = 1
        if self.peek().text in "+-" and self.peek().kind == "op":
            sign = -1 if self.take().text == "-" else 1
        result = self.term() * sign
        while self.peek().kind == "op" and self.peek().text in ("+", "-"):
            sign = -1 if self.take().text == "-" else 1
            result = result + self.term() * sign
        return Polynomial(n, result.terms)

    def number(self) -> Fraction:
        num = int(self.take().text)
        if self.peek().text == "/":
            self.take()
            t = self.peek()
            if t.kind != "num":
                self.error("expected a denominator after '/'")
            den = int(self.take().text)
            if den == 0:
                self.error("zero denominator", t)
            return Fraction(num, den)
        return Fraction(num)

    def term(self) -> Polynomial:
        n = len(self.names)
        coeff = Fraction(1)
        exps = [0] * n
        seen = False
        while True:
            t = self.peek()
            if t.kind == "num":
                coeff *= self.number()
            elif t.kind == "ident":
                self.take()
                if t.text in self.names:
                    parts = [t.text]
                else:
                    parts = _split_identifier(t.text, self.names)
                    if parts is None:
                        self.error(f"unknown variable {t.text!r}", t, UnknownVariable)
                power = 1
                if self.peek().text == "^":
                    self.take()
                    e = self.peek()
                    if e.kind != "num":
                        self.error("expected an exponent after '^'")
                    power = int(self.take().text)
                    if power > self.max_exp:
                        self.error(f"exponent {power} exceeds the cap {self.max_exp}", e)
                for k, name in enumerate(parts):
                    # In "xy^3" the power binds to the last factor only.
                    exps[self.names.index(name)] += power if k == len(parts) - 1 else 1
            else:
                break
            seen = True
            if self.peek().text == "*":
                self.take()
                if self.peek().kind not in ("num", "ident"):
                    self.error("expected a factor after '*'")
        if not seen:
            self.error(f"expected a term, found {self.peek().text or 'end of input'!r}")
        return Polynomial(n, {tuple(exps): coeff})


def parse_system(text: str, max_exp: int | None = None) -> tuple[list[str], list[Polynomial]]:
    """Parse a system file into variable names and canonical polynomials."""
    return _Parser(text, max_exp if max_exp is not None else max_exponent()).system()


def format_system(names: Sequence[str], polys: Iterable[Polynomial]) -> str:
    lines = ["vars " + " ".join(names) + ";"]
    lines += [p.format(names) + ";" for p in polys]
    return "\n".join(lines) + "\n"
