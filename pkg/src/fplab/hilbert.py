"""Hilbert series, dimension, multiplicity, length and embedding dimension.

All invariants of graded quotients S/I are read off the initial ideal of a
reduced grevlex Groebner basis; the numerator comes from the classical
pivot-splitting recursion on monomial ideals, in exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FplabError
from .groebner import GREVLEX, Ideal
from .poly import Expo, mono_divides


class _InfiniteLength:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _InfiniteLength()


@dataclass(frozen=True)
class HilbertSeries:
    """Series of S/I as h(t)/(1-t)^n with the (1-t)-free reduced numerator.

    numerator[k] is the coefficient of t^k; pole_order is the dimension of
    the quotient.
    """

    numerator: tuple[int, ...]
    reduced_numerator: tuple[int, ...]
    pole_order: int
    nvars: int

    def multiplicity(self) -> int:
        return sum(self.reduced_numerator)


def _check_homogeneous(ideal: Ideal):
    for g in ideal.gens:
        if not g.is_homogeneous():
            raise ValueError("ideal has a non-homogeneous generator")


def _check_proper(ideal: Ideal):
    if not ideal.is_proper():
        raise ValueError("unit ideal")


def initial_ideal(ideal: Ideal) -> Ideal:
    """Monomial ideal of the leading terms of the reduced grevlex basis."""
    gb = ideal.groebner_basis(GREVLEX)
    return Ideal(ideal.ctx, tuple(ideal.ctx.monomial(g.leading_monomial()) for g in gb))


def _minimalize(gens: list[Expo]) -> list[Expo]:
    out: list[Expo] = []
    for g in sorted(gens, key=lambda e: (sum(e), e)):
        if not any(mono_divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_shift(a: list[int], k: int) -> list[int]:
    return [0] * k + a if a else []

def _poly_mul_one_minus_tk(a: list[int], k: int) -> list[int]:
    # a(t) * (1 - t^k)
    return _poly_add(a, [-c for c in _poly_shift(a, k)])


def _numerator(gens: list[Expo], n: int) -> list[int]:
    gens = _minimalize(gens)
    if any(not any(e) for e in gens):
        return []  # 1 is a generator: the quotient is zero
    if len(gens) <= 1:
        if not gens:
            return [1]
        return _poly_mul_one_minus_tk([1], sum(gens[0]))
    pure = [e for e in gens if sum(1 for x in e if x) == 1]
    mixed = [e for e in gens if sum(1 for x in e if x) > 1]
    if not mixed:
        h = [1]
        for e in pure:
            h = _poly_mul_one_minus_tk(h, sum(e))
        return h
    # Pivot on the variable occurring most often among mixed generators.
    counts = [0] * n
    for e in mixed:
        for i, x in enumerate(e):
            if x:
                counts[i] += 1
    pivot = counts.index(max(counts))
    unit = tuple(1 if i == pivot else 0 for i in range(n))
    plus = _numerator(gens + [unit], n)
    quotient = [tuple(x - 1 if i == pivot and x else x for i, x in enumerate(e)) for e in gens]
    by = _numerator(quotient, n)
    return _poly_add(plus, _poly_shift(by, 1))


def _strip_unit_root(h: list[int]) -> tuple[list[int], int]:
    """Divide h by (1-t) as often as it divides exactly; return (quotient, count)."""
    count = 0
    cur = list(h)
    while cur and sum(cur) == 0:
        out = []
        acc = 0
        for c in cur:
            acc += c
            out.append(acc)
        assert out[-1] == 0
        out.pop()
        while out and out[-1] == 0:
            out.pop()
        cur = out
        count += 1
    return cur, count


def hilbert_series(ideal: Ideal) -> HilbertSeries:
    """Hilbert series of S/I for a homogeneous proper ideal."""
    _check_homogeneous(ideal)
    _check_proper(ideal)
    n = ideal.ctx.n
    gens = [g.leading_monomial() for g in ideal.groebner_basis(GREVLEX)]
    h = _numerator(gens, n)
    reduced, cancelled = _strip_unit_root(h)
    pole = n - cancelled
    if sum(reduced) <= 0:
        raise FplabError("internal: reduced Hilbert numerator not positive at t=1")
    return HilbertSeries(tuple(h), tuple(reduced), pole, n)


def dimension(ideal: Ideal) -> int:
    return hilbert_series(ideal).pole_order


def multiplicity(ideal: Ideal) -> int:
    return hilbert_series(ideal).multiplicity()


def embedding_dimension(ideal: Ideal) -> int:
    """n minus the number of linear forms in the reduced grevlex basis."""
    _check_homogeneous(ideal)
    _check_proper(ideal)
    gb = ideal.groebner_basis(GREVLEX)
    linear = sum(1 for g in gb if g.total_degree() == 1)
    return ideal.ctx.n - linear


def length_quotient(ideal: Ideal):
    """Number of standard monomials of S/I, or INFINITE.

    Finite exactly when every variable has a pure power among the leading
    terms; then the standard monomials sit inside the box those powers bound.
    """
    gb = ideal.groebner_basis(GREVLEX)
    if gb and gb[0].total_degree() == 0:
        return 0
    n = ideal.ctx.n
    leads = _minimalize([g.leading_monomial() for g in gb])
    bounds = [None] * n
    for e in leads:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            i = nz[0]
            if bounds[i] is None or e[i] < bounds[i]:
                bounds[i] = e[i]
    if any(b is None for b in bounds):
        return INFINITE
    count = 0
    for e in itertools.product(*[range(b) for b in bounds]):
        if not any(mono_divides(g, e) for g in leads):
            count += 1
    return count
