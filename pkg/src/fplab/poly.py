"""Sparse multivariate polynomials over F_p with monomial orders and a parser.

Monomials are plain exponent tuples. A polynomial stores its terms sorted
strictly descending in its ring's monomial order, which makes equality a
structural comparison and keeps Groebner-basis output canonical.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import ContextMismatchError, ParseError
from .field import FpScalar, Prime

Expo = tuple[int, ...]
Term = tuple[Expo, int]

# Frobenius powers multiply exponents by p^e; cap them before they get absurd.
EXPONENT_LIMIT = 1 << 31

MAX_VARS = 12

_VAR_NAME = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*\Z")


def _grevlex_key(e: Expo) -> tuple[int, ...]:
    # Ascending key: higher total degree wins; ties go to the vector whose
    # last nonzero entry of the difference is negative.
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: grevlex, lex, or the block order elim(k).

    elim(k) compares the first k exponents as a grevlex block, then the rest
    as a second grevlex block; it is an elimination order for the first k
    variables.
    """

    kind: str
    block: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "elim" and self.block < 1:
            raise ValueError("elimination block must be at least 1")

    def key(self, e: Expo) -> tuple[int, ...]:
        """Flat integer tuple that sorts ascending in this order."""
        if self.kind == "grevlex":
            return _grevlex_key(e)
        if self.kind == "lex":
            return e
        k = self.block
        return _grevlex_key(e[:k]) + _grevlex_key(e[k:])

    def __str__(self):
        return f"elim({self.block})" if self.kind == "elim" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def elim_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


def mono_cmp(a: Expo, b: Expo, order: MonomialOrder = GREVLEX) -> int:
    """Compare two exponent vectors: -1, 0 or 1."""
    if len(a) != len(b):
        raise ValueError("monomial length mismatch")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


def mono_mul(a: Expo, b: Expo) -> Expo:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Expo, b: Expo) -> Expo:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Expo, b: Expo) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Expo, b: Expo) -> Expo:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a: Expo) -> int:
    return sum(a)


@dataclass(frozen=True)
class RingCtx:
    """The ambient ring F_p[x_1..x_n] with a monomial order.

    Every polynomial and ideal is bound to one context. Variable names must
    be ordinary identifiers; names starting with '@' are reserved for
    internally constructed auxiliary rings (which may also exceed the
    default variable cap).
    """

    prime: Prime
    vars: tuple[str, ...]
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "prime", Prime(self.prime))
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise ValueError("a ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("variable names must be unique")
        internal = any(v.startswith("@") for v in self.vars)
        for v in self.vars:
            if not (_VAR_NAME.match(v) or v.startswith("@")):
                raise ValueError(f"invalid variable name {v!r}")
        if not internal and len(self.vars) > MAX_VARS:
            raise ValueError(f"at most {MAX_VARS} variables supported")

    @property
    def n(self) -> int:
        return len(self.vars)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: int) -> "Polynomial":
        return Polynomial(self, (((0,) * self.n, c),))

    def monomial(self, expo: Expo, coeff: int = 1) -> "Polynomial":
        if len(expo) != self.n:
            raise ValueError("exponent vector length mismatch")
        return Polynomial(self, ((tuple(expo), coeff),))

    def var(self, name: str) -> "Polynomial":
        i = self.vars.index(name)
        e = tuple(1 if j == i else 0 for j in range(self.n))
        return self.monomial(e)

    def gens(self) -> tuple["Polynomial", ...]:
        return tuple(self.var(v) for v in self.vars)

    def poly(self, text: str) -> "Polynomial":
        return parse_poly(text, self)

    def with_order(self, order: MonomialOrder) -> "RingCtx":
        return RingCtx(self.prime, self.vars, order)


def degree_monomials(ctx: RingCtx, d: int):
    """Yield the exponent vectors of all degree-d monomials, deterministically."""
    n = ctx.n
    for combo in itertools.combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


class Polynomial:
    """Immutable sparse polynomial over the context's prime field."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: RingCtx, terms=(), *, _sorted=False):
        self.ctx = ctx
        if _sorted:
            self.terms = terms
            return
        p = ctx.prime
        acc: dict[Expo, int] = {}
        for e, c in terms:
            e = tuple(e)
            if len(e) != ctx.n:
                raise ValueError("exponent vector length mismatch")
            acc[e] = (acc.get(e, 0) + c) % p
        key = ctx.order.key
        self.terms = tuple(
            sorted(((e, c) for e, c in acc.items() if c), key=lambda t: key(t[0]), reverse=True)
        )

    # -- basic structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.ctx.prime == other.ctx.prime
            and self.ctx.vars == other.ctx.vars
            and frozenset(self.terms) == frozenset(other.terms)
        )

    def __hash__(self):
        return hash((self.ctx.prime, self.ctx.vars, frozenset(self.terms)))

    def leading_monomial(self) -> Expo:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return self.terms[0][0]

    def leading_coefficient(self) -> FpScalar:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading term")
        return FpScalar(self.terms[0][1], self.ctx.prime)

    def coefficient(self, expo: Expo) -> FpScalar:
        expo = tuple(expo)
        for e, c in self.terms:
            if e == expo:
                return FpScalar(c, self.ctx.prime)
        return FpScalar(0, self.ctx.prime)

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.terms[0][1]
        if c == 1:
            return self
        return self.scale(pow(c, -1, self.ctx.prime))

    def scale(self, c: int) -> "Polynomial":
        p = self.ctx.prime
        c %= p
        if c == 0:
            return Polynomial(self.ctx, (), _sorted=True)
        if c == 1:
            return self
        return Polynomial(
            self.ctx, tuple((e, (a * c) % p) for e, a in self.terms), _sorted=True
        )

    # -- arithmetic --------------------------------------------------------

    def _require_same_ctx(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError("polynomials belong to different ring contexts")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_ctx(other)
        p = self.ctx.prime
        key = self.ctx.order.key
        a, b = self.terms, other.terms
        out = []
        i = j = 0
        while i < len(a) and j < len(b):
            ea, ca = a[i]
            eb, cb = b[j]
            if ea == eb:
                c = (ca + cb) % p
                if c:
                    out.append((ea, c))
                i += 1
                j += 1
            elif key(ea) > key(eb):
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Polynomial(self.ctx, tuple(out), _sorted=True)

    def __neg__(self):
        p = self.ctx.prime
        return Polynomial(
            self.ctx, tuple((e, (-c) % p) for e, c in self.terms), _sorted=True
        )

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_ctx(other)
        p = self.ctx.prime
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial(self.ctx, (), _sorted=True)
        if len(a) == 1:
            (ea, ca) = a[0]
            return Polynomial(
                self.ctx,
                tuple((mono_mul(ea, eb), (ca * cb) % p) for eb, cb in b),
                _sorted=True,
            )
        acc: dict[Expo, int] = {}
        for ea, ca in a:
            for eb, cb in b:
                e = mono_mul(ea, eb)
                acc[e] = (acc.get(e, 0) + ca * cb) % p
        key = self.ctx.order.key
        return Polynomial(
            self.ctx,
            tuple(sorted(((e, c) for e, c in acc.items() if c), key=lambda t: key(t[0]), reverse=True)),
            _sorted=True,
        )

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k > 1
            k >>= 1
            if base_needed:
                base = base * base
        return result

    def frobenius(self, e: int) -> "Polynomial":
        """Return self**(p**e), computed termwise: (c, a) -> (c, p^e * a)."""
        if e < 0:
            raise ValueError("negative Frobenius iterate")
        if e == 0:
            return self
        q = int(self.ctx.prime) ** e
        for expo, _ in self.terms:
            if any(x * q >= EXPONENT_LIMIT for x in expo):
                raise OverflowError("Frobenius power exceeds the exponent limit")
        # Scaling every exponent by q preserves all supported orders.
        return Polynomial(
            self.ctx,
            tuple((tuple(x * q for x in e2), c) for e2, c in self.terms),
            _sorted=True,
        )

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)})"


# -- formatting and parsing ---------------------------------------------


def format_poly(f: Polynomial) -> str:
    """Render a polynomial so that parse_poly reads it back verbatim."""
    if not f.terms:
        return "0"
    parts = []
    for e, c in f.terms:
        factors = []
        if c != 1 or not any(e):
            factors.append(str(c))
        for name, k in zip(f.ctx.vars, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        parts.append("*".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"[ \t]*(?:(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<int>\d+)|(?P<sym>[-+*^()]))")


class _Parser:
    """Recursive-descent parser for polynomial expressions.

    Grammar: expr := ['-'] term (('+'|'-') term)*
             term := factor ('*' factor)*
             factor := base ('^' uint)?
             base := '(' expr ')' | variable | uint
    There is no implicit multiplication; integer literals reduce mod p.
    """

    def __init__(self, text: str, ctx: RingCtx, column_offset: int = 0, line=None):
        self.ctx = ctx
        self.offset = column_offset
        self.line = line
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == m.start():
                rest = text[pos:].lstrip()
                if not rest:
                    break
                self._fail(f"unexpected character {rest[0]!r}", pos + len(text[pos:]) - len(rest))
            start = m.end() - len((m.group("name") or m.group("int") or m.group("sym")))
            if m.group("name"):
                self.tokens.append(("name", m.group("name"), start))
            elif m.group("int"):
                self.tokens.append(("int", m.group("int"), start))
            else:
                self.tokens.append(("sym", m.group("sym"), start))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def _fail(self, message, pos):
        raise ParseError(message, line=self.line, column=self.offset + pos + 1)

    def _peek(self):
        return self.tokens[self.i]

    def _next(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        poly = self._expr()
        kind, text, pos = self._peek()
        if kind != "end":
            self._fail(f"unexpected token {text!r}", pos)
        return poly

    def _expr(self) -> Polynomial:
        kind, text, _ = self._peek()
        negate = False
        if kind == "sym" and text == "-":
            self._next()
            negate = True
        poly = self._term()
        if negate:
            poly = -poly
        while True:
            kind, text, _ = self._peek()
            if kind == "sym" and text in "+-":
                self._next()
                rhs = self._term()
                poly = poly + rhs if text == "+" else poly - rhs
            else:
                return poly

    def _term(self) -> Polynomial:
        poly = self._factor()
        while True:
            kind, text, _ = self._peek()
            if kind == "sym" and text == "*":
                self._next()
                poly = poly * self._factor()
            else:
                return poly

    def _factor(self) -> Polynomial:
        base = self._base()
        kind, text, _ = self._peek()
        if kind == "sym" and text == "^":
            self._next()
            kind, text, pos = self._next()
            if kind != "int":
                self._fail("exponent must be a nonnegative integer", pos)
            k = int(text)
            if k >= EXPONENT_LIMIT:
                self._fail("exponent too large", pos)
            return base ** k
        return base

    def _base(self) -> Polynomial:
        kind, text, pos = self._next()
        if kind == "sym" and text == "(":
            poly = self._expr()
            kind, text, pos = self._next()
            if not (kind == "sym" and text == ")"):
                self._fail("expected ')'", pos)
            return poly
        if kind == "name":
            if text not in self.ctx.vars:
                self._fail(f"unknown variable {text!r}", pos)
            return self.ctx.var(text)
        if kind == "int":
            return self.ctx.const(int(text))
        self._fail(f"unexpected token {text!r}" if text else "unexpected end of input", pos)


def parse_poly(text: str, ctx: RingCtx, *, column_offset: int = 0, line=None) -> Polynomial:
    """Parse an expression into a canonical polynomial bound to ctx."""
    return _Parser(text, ctx, column_offset, line).parse()
