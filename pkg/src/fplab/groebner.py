"""Buchberger-based ideal arithmetic.

Reduced Groebner bases with normal-strategy pair selection and both of
Buchberger's criteria, plus the ideal operations built on top of them:
normal forms, membership, equality, sums, products, elimination,
intersection and colon.
"""

from __future__ import annotations

import heapq
import itertools

from .errors import BudgetExceededError, ContextMismatchError, FplabError
from .poly import (
    GREVLEX,
    Expo,
    MonomialOrder,
    Polynomial,
    RingCtx,
    elim_order,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_PAIR_BUDGET = 1_000_000
_pair_budget = DEFAULT_PAIR_BUDGET


def set_default_pair_budget(n: int):
    """Set the process-wide default S-pair budget (exceeding it raises)."""
    global _pair_budget
    if n < 1:
        raise ValueError("pair budget must be positive")
    _pair_budget = n


def get_default_pair_budget() -> int:
    return _pair_budget


# Internally a basis element is a tuple of (expo, coeff) terms sorted
# strictly descending under the order the basis was computed for, with
# leading coefficient 1.
_Raw = tuple[tuple[Expo, int], ...]


def _sorted_raw(f: Polynomial, key) -> _Raw:
    return tuple(sorted(f.terms, key=lambda t: key(t[0]), reverse=True))


def _monic_raw(terms: _Raw, p: int) -> _Raw:
    c0 = terms[0][1]
    if c0 == 1:
        return terms
    inv = pow(c0, -1, p)
    return tuple((e, (c * inv) % p) for e, c in terms)


def _neg_key(key, e: Expo) -> tuple[int, ...]:
    return tuple(-x for x in key(e))


def _nf_raw(stream, basis: list[_Raw], key, p: int) -> _Raw:
    """Fully reduce a stream of (expo, coeff) terms against monic divisors.

    Returns the normal form as terms sorted strictly descending. The heap
    always yields the currently largest monomial; reductions only introduce
    strictly smaller ones, so each monomial is finalized exactly once.
    """
    u: dict[Expo, int] = {}
    heap: list = []
    for e, c in stream:
        old = u.get(e, 0)
        new = (old + c) % p
        if new:
            u[e] = new
            if old == 0:
                heapq.heappush(heap, (_neg_key(key, e), e))
        elif old:
            del u[e]
    leads = [(g[0][0], g) for g in basis]
    remainder = []
    while heap:
        _, e = heapq.heappop(heap)
        c = u.pop(e, 0)
        if not c:
            continue
        for lm, g in leads:
            if mono_divides(lm, e):
                shift = mono_div(e, lm)
                for ge, gc in g[1:]:
                    ue = mono_mul(ge, shift)
                    old = u.get(ue, 0)
                    new = (old - c * gc) % p
                    if new:
                        u[ue] = new
                        if old == 0:
                            heapq.heappush(heap, (_neg_key(key, ue), ue))
                    elif old:
                        del u[ue]
                break
        else:
            remainder.append((e, c))
    return tuple(remainder)


def _spair_stream(fi: _Raw, fj: _Raw, lcm: Expo, p: int):
    si = mono_div(lcm, fi[0][0])
    sj = mono_div(lcm, fj[0][0])
    for e, c in fi:
        yield mono_mul(e, si), c
    for e, c in fj:
        yield mono_mul(e, sj), (-c) % p


def _buchberger_raw(seed: list[_Raw], key, p: int, budget: int) -> tuple[_Raw, ...]:
    # One autoreduction pass over the input keeps the pair queue small.
    basis: list[_Raw] = []
    for t in sorted(set(seed), key=lambda t: key(t[0][0])):
        r = _nf_raw(t, basis, key, p)
        if r:
            basis.append(_monic_raw(r, p))

    lms = [b[0][0] for b in basis]
    pending: set[tuple[int, int]] = set()
    heap: list = []

    # Normal selection: smallest pair lcm first. Leading with the total
    # degree matches the order key verbatim for grevlex and keeps block
    # elimination orders from deferring the cheap low-degree pairs.
    def push(i: int, j: int):
        lcm = mono_lcm(lms[i], lms[j])
        heapq.heappush(heap, ((sum(lcm),) + key(lcm), i, j))
        pending.add((i, j))

    for j in range(len(basis)):
        for i in range(j):
            push(i, j)

    processed = 0
    while heap:
        _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > budget:
            raise BudgetExceededError(f"S-pair budget of {budget} exceeded")
        lmi, lmj = lms[i], lms[j]
        lcm = mono_lcm(lmi, lmj)
        if lcm == mono_mul(lmi, lmj):
            continue  # coprime leading terms
        if _chain_criterion(i, j, lcm, lms, pending):
            continue
        r = _nf_raw(_spair_stream(basis[i], basis[j], lcm, p), basis, key, p)
        if r:
            t = len(basis)
            basis.append(_monic_raw(r, p))
            lms.append(r[0][0])
            for k in range(t):
                push(k, t)

    return _reduce_basis(basis, key, p)


def _chain_criterion(i: int, j: int, lcm: Expo, lms: list[Expo], pending) -> bool:
    # Skip (i, j) when some third leading term divides the pair's lcm and
    # both companion pairs were already handled.
    for k in range(len(lms)):
        if k == i or k == j:
            continue
        if mono_divides(lms[k], lcm):
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pending and b not in pending:
                return True
    return False


def _reduce_basis(basis: list[_Raw], key, p: int) -> tuple[_Raw, ...]:
    # Minimalize: ascending leads, keep only those no kept lead divides.
    kept: list[_Raw] = []
    for g in sorted(basis, key=lambda t: key(t[0][0])):
        lm = g[0][0]
        if not any(mono_divides(h[0][0], lm) for h in kept):
            kept.append(g)
    # Tail-reduce each element against all the others, in place.
    for idx in range(len(kept)):
        others = kept[:idx] + kept[idx + 1 :]
        kept[idx] = _nf_raw(kept[idx], others, key, p)
    kept.sort(key=lambda t: key(t[0][0]), reverse=True)
    return tuple(kept)


def buchberger(gens, order: MonomialOrder = GREVLEX, pair_budget=None) -> tuple[Polynomial, ...]:
    """Reduced Groebner basis of the ideal generated by gens, under order."""
    gens = [g for g in gens if g]
    if not gens:
        return ()
    ctx = gens[0].ctx
    for g in gens:
        if g.ctx != ctx:
            raise ContextMismatchError("generators belong to different ring contexts")
    budget = pair_budget if pair_budget is not None else _pair_budget
    key = order.key
    p = int(ctx.prime)
    seed = [_monic_raw(_sorted_raw(g, key), p) for g in gens]
    raw = _buchberger_raw(seed, key, p, budget)
    return tuple(Polynomial(ctx, t) for t in raw)


class Ideal:
    """A finitely generated ideal with lazily cached reduced Groebner bases.

    Immutable apart from the one-shot basis cache; a racing refill only
    recomputes the identical result.
    """

    __slots__ = ("ctx", "gens", "_raw", "_polys")

    def __init__(self, ctx: RingCtx, gens=()):
        gens = tuple(g for g in gens if g)
        for g in gens:
            if g.ctx != ctx:
                raise ContextMismatchError("generator bound to a different ring context")
        self.ctx = ctx
        self.gens = gens
        self._raw: dict[MonomialOrder, tuple] = {}
        self._polys: dict[MonomialOrder, tuple[Polynomial, ...]] = {}

    @classmethod
    def spanned_by(cls, *gens: Polynomial) -> "Ideal":
        if not gens:
            raise ValueError("need at least one generator (or construct Ideal(ctx, ()))")
        return cls(gens[0].ctx, gens)

    def _raw_basis(self, order: MonomialOrder, pair_budget=None):
        cached = self._raw.get(order)
        if cached is not None:
            return cached
        key = order.key
        p = int(self.ctx.prime)
        budget = pair_budget if pair_budget is not None else _pair_budget
        seed = [_monic_raw(_sorted_raw(g, key), p) for g in self.gens]
        raw = _buchberger_raw(seed, key, p, budget) if seed else ()
        self._raw.setdefault(order, raw)
        return self._raw[order]

    def groebner_basis(self, order: MonomialOrder | None = None, pair_budget=None) -> tuple[Polynomial, ...]:
        order = order or self.ctx.order
        cached = self._polys.get(order)
        if cached is not None:
            return cached
        raw = self._raw_basis(order, pair_budget)
        polys = tuple(Polynomial(self.ctx, t) for t in raw)
        self._polys.setdefault(order, polys)
        return self._polys[order]

    def normal_form(self, f: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
        if f.ctx.prime != self.ctx.prime or f.ctx.vars != self.ctx.vars:
            raise ContextMismatchError("polynomial bound to a different ring context")
        order = order or self.ctx.order
        raw = self._raw_basis(order)
        result = _nf_raw(f.terms, list(raw), order.key, int(self.ctx.prime))
        return Polynomial(self.ctx, result)

    def __contains__(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        self._require_same_ring(other)
        return all(g in self for g in other.gens)

    def _require_same_ring(self, other: "Ideal"):
        if self.ctx.prime != other.ctx.prime or self.ctx.vars != other.ctx.vars:
            raise ContextMismatchError("ideals belong to different ring contexts")

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._require_same_ring(other)
        return self.groebner_basis(GREVLEX) == other.groebner_basis(GREVLEX)

    def __add__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._require_same_ring(other)
        return Ideal(self.ctx, self.gens + other.gens)

    def __mul__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._require_same_ring(other)
        return Ideal(self.ctx, tuple(a * b for a in self.gens for b in other.gens))

    def is_zero(self) -> bool:
        return not self.groebner_basis(GREVLEX)

    def is_proper(self) -> bool:
        gb = self.groebner_basis(GREVLEX)
        return not (gb and gb[0].total_degree() == 0)

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens) or '0'})"


def ideal_member(f: Polynomial, ideal: Ideal) -> bool:
    return f in ideal


def normal_form(f: Polynomial, ideal: Ideal, order: MonomialOrder | None = None) -> Polynomial:
    return ideal.normal_form(f, order)


def _fresh_name(base: str, taken) -> str:
    name = base
    while name in taken:
        name = "@" + name
    return name


def eliminate(ideal: Ideal, k: int) -> Ideal:
    """Generators of the contraction to F_p[x_{k+1}..x_n], in the same context."""
    n = ideal.ctx.n
    if not 1 <= k < n:
        raise ValueError(f"elimination count must be in [1, {n - 1}]")
    gb = ideal.groebner_basis(elim_order(k))
    zeros = (0,) * k
    kept = [g for g in gb if all(e[:k] == zeros for e, _ in g.terms)]
    return Ideal(ideal.ctx, tuple(kept))


def intersect(a: Ideal, b: Ideal) -> Ideal:
    """Ideal intersection via one auxiliary variable: eliminate t from tI + (1-t)J."""
    a._require_same_ring(b)
    ctx = a.ctx
    if not a.gens or not b.gens:
        return Ideal(ctx, ())
    tname = _fresh_name("@t", ctx.vars)
    ext = RingCtx(ctx.prime, (tname,) + ctx.vars, elim_order(1))

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, tuple(((0,) + e, c) for e, c in f.terms))

    t = ext.var(tname)
    one_minus_t = ext.one() - t
    gens = [t * lift(g) for g in a.gens] + [one_minus_t * lift(g) for g in b.gens]
    basis = Ideal(ext, gens).groebner_basis(elim_order(1))
    kept = [g for g in basis if all(e[0] == 0 for e, _ in g.terms)]
    projected = [Polynomial(ctx, tuple((e[1:], c) for e, c in g.terms)) for g in kept]
    return Ideal(ctx, tuple(projected))


def _divide_exact(u: Polynomial, g: Polynomial) -> Polynomial:
    """Exact quotient u/g; failure indicates a broken internal invariant."""
    ctx = u.ctx
    p = int(ctx.prime)
    key = ctx.order.key
    graw = _sorted_raw(g, key)
    glm, glc = graw[0]
    inv = pow(glc, -1, p)
    rem: dict[Expo, int] = {}
    heap: list = []
    for e, c in u.terms:
        rem[e] = c
        heapq.heappush(heap, (_neg_key(key, e), e))
    quotient = []
    while heap:
        _, e = heapq.heappop(heap)
        c = rem.pop(e, 0)
        if not c:
            continue
        if not mono_divides(glm, e):
            raise FplabError("exact division failed: internal invariant violation")
        shift = mono_div(e, glm)
        qc = (c * inv) % p
        quotient.append((shift, qc))
        for ge, gc in graw[1:]:
            ue = mono_mul(ge, shift)
            old = rem.get(ue, 0)
            new = (old - qc * gc) % p
            if new:
                rem[ue] = new
                if old == 0:
                    heapq.heappush(heap, (_neg_key(key, ue), ue))
            elif old:
                del rem[ue]
    return Polynomial(ctx, tuple(quotient))


def colon(a: Ideal, b: Ideal) -> Ideal:
    """The colon ideal (a : b), via (a : g) = (a ∩ (g))/g intersected over gens."""
    a._require_same_ring(b)
    if not b.gens:
        raise ValueError("colon by the zero ideal")
    result = None
    for g in b.gens:
        meet = intersect(a, Ideal(a.ctx, (g,)))
        quot = Ideal(a.ctx, tuple(_divide_exact(u, g) for u in meet.gens))
        result = quot if result is None else intersect(result, quot)
    return result


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    return a + b


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    return a * b


def ideal_eq(a: Ideal, b: Ideal) -> bool:
    return a == b


def monomial_ideal(ctx: RingCtx, expos) -> Ideal:
    return Ideal(ctx, tuple(ctx.monomial(e) for e in expos))


def maximal_ideal(ctx: RingCtx) -> Ideal:
    """The irrelevant maximal ideal (x_1, ..., x_n)."""
    return Ideal(ctx, ctx.gens())


def random_combination(rng, ideal: Ideal, degree: int = 2):
    """A random element of the ideal: sum of random low-degree multiples of gens.

    Test helper; deterministic given the rng.
    """
    ctx = ideal.ctx
    p = int(ctx.prime)
    total = ctx.zero()
    for g in ideal.gens:
        terms = []
        for e in itertools.product(range(degree + 1), repeat=ctx.n):
            if sum(e) <= degree and rng.random() < 0.3:
                c = rng.randrange(p)
                if c:
                    terms.append((e, c))
        total = total + Polynomial(ctx, tuple(terms)) * g
    return total
