"""Shared builders for the test suite."""

from __future__ import annotations

import itertools

from fplab import GREVLEX, Ideal, Polynomial, Prime, RingCtx


def ring(names: str, p: int = 2, order=GREVLEX) -> RingCtx:
    return RingCtx(Prime(p), tuple(names.split(",")), order)


def random_poly(rng, ctx, max_deg=3, max_terms=4, nonzero=False) -> Polynomial:
    p = int(ctx.prime)
    while True:
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            e = [0] * ctx.n
            budget = rng.randint(0, max_deg)
            for _ in range(budget):
                e[rng.randrange(ctx.n)] += 1
            terms.append((tuple(e), rng.randrange(1, p)))
        f = Polynomial(ctx, tuple(terms))
        if f or not nonzero:
            return f


def random_ideal(rng, ctx, max_gens=3, max_deg=3) -> Ideal:
    gens = [random_poly(rng, ctx, max_deg, nonzero=True) for _ in range(rng.randint(1, max_gens))]
    return Ideal(ctx, tuple(gens))


def random_homogeneous_poly(rng, ctx, degree, max_terms=4) -> Polynomial:
    """A nonzero homogeneous polynomial of exactly the given degree."""
    p = int(ctx.prime)
    monos = list(itertools.combinations_with_replacement(range(ctx.n), degree))
    while True:
        terms = []
        for combo in rng.sample(monos, min(len(monos), rng.randint(1, max_terms))):
            e = [0] * ctx.n
            for i in combo:
                e[i] += 1
            terms.append((tuple(e), rng.randrange(1, p)))
        f = Polynomial(ctx, tuple(terms))
        if f:
            return f


def regenerate(rng, ideal: Ideal) -> Ideal:
    """Same ideal, different generator list: elementary moves plus one sum.

    Each move adds a multiple of one current generator to another, which is
    always invertible, so the generated ideal never changes.
    """
    gens = list(ideal.gens)
    if len(gens) > 1:
        for _ in range(len(gens)):
            i, j = rng.sample(range(len(gens)), 2)
            gens[i] = gens[i] + random_poly(rng, ideal.ctx, max_deg=1) * gens[j]
    extra = ideal.ctx.zero()
    for g in ideal.gens:
        extra = extra + random_poly(rng, ideal.ctx, max_deg=1) * g
    out = [g for g in gens if g]
    if extra:
        out.append(extra)
    return Ideal(ideal.ctx, tuple(out))


def all_monomial_subsets(ctx):
    """Every squarefree monomial (nonempty variable subset) of the ring."""
    n = ctx.n
    for r in range(1, n + 1):
        for combo in itertools.combinations(range(n), r):
            yield ctx.monomial(tuple(1 if i in combo else 0 for i in range(n)))
