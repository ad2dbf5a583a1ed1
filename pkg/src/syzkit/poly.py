"""Exact multivariate polynomials over QQ, monomial orders, parsing and printing.

Polynomials are immutable.  Internally a polynomial is a mapping from dense
exponent tuples to ``gmpy2.mpq`` coefficients; the public ``terms`` view is
sorted strictly descending under the ring's active order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

__all__ = [
    "QQ",
    "to_rational",
    "RingContext",
    "MonomialOrder",
    "monomial_compare",
    "GaussianRational",
    "Polynomial",
    "PolynomialError",
    "ParseError",
    "parse_poly",
    "format_poly",
    "evaluate_poly",
    "parse_gaussian",
    "primitive_scale",
]

QQ = mpq

_VAR_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    """Syntax error in a polynomial or number literal; ``pos`` is 0-based."""

    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"{message} at position {pos} in {text!r}")


def to_rational(value) -> mpq:
    if isinstance(value, str):
        return _parse_rational_literal(value)
    return mpq(value)


class MonomialOrder(str, Enum):
    GREVLEX = "grevlex"
    LEX = "lex"

    def key(self, exps: Sequence[int]):
        """Sort key: a larger key means a larger monomial."""
        if self is MonomialOrder.LEX:
            return tuple(exps)
        return (sum(exps), tuple(-e for e in reversed(exps)))


def monomial_compare(order: MonomialOrder | str, a: Sequence[int], b: Sequence[int]) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to, or greater than ``b``."""
    if len(a) != len(b):
        raise PolynomialError(f"arity mismatch: {len(a)} vs {len(b)}")
    order = MonomialOrder(order)
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


@dataclass(frozen=True)
class RingContext:
    """The ring QQ[variables] together with its active monomial order."""

    variables: tuple[str, ...]
    order: MonomialOrder = MonomialOrder.GREVLEX
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        variables = tuple(self.variables)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "order", MonomialOrder(self.order))
        if not variables:
            raise PolynomialError("a ring needs at least one variable")
        for v in variables:
            if not isinstance(v, str) or not _VAR_RE.match(v):
                raise PolynomialError(f"invalid variable name {v!r}")
        if len(set(variables)) != len(variables):
            raise PolynomialError(f"duplicate variable names in {variables}")
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        return self._index[name]

    def key(self, exps: Sequence[int]):
        return self.order.key(exps)

    def with_order(self, order: MonomialOrder | str) -> "RingContext":
        return RingContext(self.variables, MonomialOrder(order))

    # convenience constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.n: to_rational(c)})

    def var(self, name: str) -> "Polynomial":
        exps = [0] * self.n
        exps[self.index(name)] = 1
        return Polynomial(self, {tuple(exps): QQ(1)})

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.variables)

    def parse(self, text: str) -> "Polynomial":
        return parse_poly(text, self)


class GaussianRational:
    """An element re + im*i of QQ(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_gaussian(value)
        if isinstance(value, complex):
            raise TypeError("floating-point complex numbers are not exact")
        return cls(value, 0)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("division by zero in QQ(i)")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussianRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return not self.im

    def __str__(self):
        if not self.im:
            return _fmt_rational(self.re)
        if not self.re:
            return _fmt_imag(self.im)
        im = _fmt_imag(self.im)
        return f"{_fmt_rational(self.re)}{'' if im.startswith('-') else '+'}{im}"

    def __repr__(self):
        return f"GaussianRational({self})"


def _fmt_rational(q: mpq) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _fmt_imag(q: mpq) -> str:
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{_fmt_rational(q)}*i"


_RATIONAL_RE = re.compile(r"\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*\Z")


def _parse_rational_literal(text: str) -> mpq:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError("expected a rational literal", text, 0)
    num = int(m.group(2))
    den = int(m.group(3)) if m.group(3) is not None else 1
    if den == 0:
        raise ParseError("zero denominator", text, m.start(3))
    q = mpq(num, den)
    return -q if m.group(1) == "-" else q


_GAUSS_RE = re.compile(
    r"""\s*(?:
        (?P<re>[+-]?\s*\d+(?:\s*/\s*\d+)?)
        (?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:\s*/\s*\d+)?)?\s*(?:\*\s*)?i)?
      | (?P<ionly_sign>[+-]?)\s*(?P<ionly>\d+(?:\s*/\s*\d+)?)?\s*(?:\*\s*)?i
    )\s*\Z""",
    re.VERBOSE,
)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse ``a``, ``a+b*i``, ``a-b*i``, ``b*i`` or ``i`` with rational a, b."""
    m = _GAUSS_RE.match(text)
    if not m:
        raise ParseError("expected a number of the form a or a+b*i", text, 0)
    if m.group("re") is not None:
        re_part = _parse_rational_literal(m.group("re").replace(" ", ""))
        if m.group("sign") is None:
            return GaussianRational(re_part, 0)
        im_part = _parse_rational_literal(m.group("im")) if m.group("im") else mpq(1)
        if m.group("sign") == "-":
            im_part = -im_part
        return GaussianRational(re_part, im_part)
    im_part = _parse_rational_literal(m.group("ionly")) if m.group("ionly") else mpq(1)
    if m.group("ionly_sign") == "-":
        im_part = -im_part
    return GaussianRational(0, im_part)


class Polynomial:
    """An immutable element of ``ring``; terms map exponent tuples to rationals."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingContext, terms: Mapping[tuple, object] | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        collected: dict[tuple, mpq] = {}
        n = ring.n
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != n or any(e < 0 for e in exps):
                raise PolynomialError(f"bad exponent vector {exps} for ring {ring.variables}")
            c = mpq(c)
            if exps in collected:
                c = collected[exps] + c
            collected[exps] = c
        key = ring.key
        ordered = sorted(((e, c) for e, c in collected.items() if c), key=lambda t: key(t[0]), reverse=True)
        self.ring = ring
        self._terms = dict(ordered)
        self._hash = None

    @classmethod
    def _raw(cls, ring: RingContext, terms: dict) -> "Polynomial":
        """Build from an already-collected dict without zero coefficients."""
        p = cls.__new__(cls)
        p.ring = ring
        key = ring.key
        p._terms = dict(sorted(terms.items(), key=lambda t: key(t[0]), reverse=True))
        p._hash = None
        return p

    # inspection
    @property
    def terms(self) -> list[tuple[mpq, tuple]]:
        return [(c, e) for e, c in self._terms.items()]

    def as_dict(self) -> dict[tuple, mpq]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def leading_term(self) -> tuple[mpq, tuple]:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        e, c = next(iter(self._terms.items()))
        return c, e

    @property
    def lc(self) -> mpq:
        return self.leading_term()[0]

    @property
    def lm(self) -> tuple:
        return self.leading_term()[1]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> mpq:
        return self._terms.get((0,) * self.ring.n, mpq(0))

    # arithmetic
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise PolynomialError("polynomials belong to different rings")
            return other
        if isinstance(other, (int, mpq)) or type(other).__name__ in ("Fraction", "mpz"):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict[tuple, mpq] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise PolynomialError("exponent must be a nonnegative integer")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = mpq(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_monomial(self, exps: Sequence[int], c=1) -> "Polynomial":
        c = mpq(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self._terms.items()}
        )

    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``divisor`` does not divide ``self``."""
        divisor = self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        key = self.ring.key
        dlc, dlm = divisor.leading_term()
        rest = dict(self._terms)
        quot: dict[tuple, mpq] = {}
        while rest:
            lm = max(rest, key=key)
            if any(a < b for a, b in zip(lm, dlm)):
                raise PolynomialError("division is not exact")
            q = tuple(a - b for a, b in zip(lm, dlm))
            qc = rest[lm] / dlc
            quot[q] = qc
            for e, c in divisor._terms.items():
                m = tuple(a + b for a, b in zip(e, q))
                v = rest.get(m, 0) - qc * c
                if v:
                    rest[m] = v
                else:
                    rest.pop(m, None)
        return Polynomial._raw(self.ring, quot)

    def change_ring(self, ring: RingContext) -> "Polynomial":
        if ring.variables != self.ring.variables:
            raise PolynomialError("rings have different variables")
        return Polynomial(ring, self._terms)

    def primitive(self) -> "Polynomial":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self._terms:
            return self
        return self.scale(primitive_scale(self.terms))

    # comparison
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, mpq)):
            return self._terms == ({(0,) * self.ring.n: mpq(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.variables, tuple(self._terms.items())))
        return self._hash

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate_poly(self, point)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"


def primitive_scale(terms: Sequence[tuple[mpq, tuple]]) -> mpq:
    """Factor turning the coefficients (leading first) into coprime integers, leading > 0."""
    coeffs = [mpq(c) for c, _ in terms]
    den = reduce(lcm, (int(c.denominator) for c in coeffs), 1)
    nums = [int(c * den) for c in coeffs]
    g = reduce(gcd, (abs(v) for v in nums), 0)
    s = mpq(den, g)
    return -s if nums[0] < 0 else s


def evaluate_poly(p: Polynomial, point: Sequence) -> GaussianRational:
    if len(point) != p.ring.n:
        raise PolynomialError(f"point has {len(point)} coordinates, ring has {p.ring.n} variables")
    pt = [GaussianRational.coerce(v) for v in point]
    powers: list[dict[int, GaussianRational]] = [{0: GaussianRational(1)} for _ in pt]

    def power(i: int, k: int) -> GaussianRational:
        cache = powers[i]
        if k not in cache:
            cache[k] = pt[i] ** k
        return cache[k]

    re, im = mpq(0), mpq(0)
    for e, c in p._terms.items():
        v = GaussianRational(c)
        for i, k in enumerate(e):
            if k:
                v = v * power(i, k)
        re += v.re
        im += v.im
    return GaussianRational(re, im)


def _fmt_monomial(ring: RingContext, exps: Sequence[int]) -> str:
    parts = []
    for name, k in zip(ring.variables, exps):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    out = []
    for i, (e, c) in enumerate(p._terms.items()):
        mono = _fmt_monomial(p.ring, e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _fmt_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_rational(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"{'-' if neg else '+'}{body}")
    return "".join(out)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([a-zA-Z][a-zA-Z0-9_]*)|(\S))")


class _Parser:
    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            m = _TOKEN_RE.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", m.group(1), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("name", m.group(2), m.start(2)))
            else:
                ch = m.group(3)
                if ch not in "+-*^/()":
                    raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
                self.tokens.append(("op", ch, m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression", self.text, 0)
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return -self.factor()
        if tok[:2] == ("op", "+"):
            self.take()
            return self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise self.error("exponent must be a nonnegative integer literal", tok)
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            num = int(val)
            if self.peek()[:2] == ("op", "/"):
                self.take()
                dtok = self.take()
                if dtok[0] != "num":
                    raise self.error("expected an integer denominator", dtok)
                den = int(dtok[1])
                if den == 0:
                    raise self.error("zero denominator", dtok)
                return self.ring.const(mpq(num, den))
            return self.ring.const(num)
        if kind == "name":
            if val not in self.ring._index:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.var(val)
        if tok[:2] == ("op", "("):
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                raise self.error("expected ')'", close)
            return p
        if kind == "end":
            raise ParseError("unexpected end of expression", self.text, pos)
        raise ParseError(f"unexpected token {val!r}", self.text, pos)


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    """Parse ``text`` in ``ring``.

    Grammar: integers, ``a/b`` literals, variables, ``+ - * ^`` and parentheses;
    ``^`` binds tightest, then ``*``, then ``+``/``-``.  Unary minus is allowed
    anywhere a factor may start; juxtaposition is not multiplication.
    """
    return _Parser(text, ring).parse()
