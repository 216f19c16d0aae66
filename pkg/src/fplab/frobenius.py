"""Characteristic-p ideal operations.

Bracket powers, p^e-th Frobenius roots, Frobenius preimages and closures,
Fedder's F-purity criterion, and the stabilization exponent of the
Frobenius action on a hypersurface's top local cohomology (its HSL number).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContextMismatchError
from .groebner import Ideal
from .poly import Expo, Polynomial, RingCtx, elim_order


@dataclass(frozen=True)
class ClosureWitness:
    """A certified membership x^q ∈ J^[q] (mod the ambient ideal)."""

    element: Polynomial
    e: int
    q: int


@dataclass(frozen=True)
class ClosureMembership:
    member: bool
    witness: ClosureWitness | None
    e_max: int


@dataclass
class FrobeniusChainReport:
    """An iterated ideal chain with its observed stabilization point.

    stabilized_at is the first index e with chain[e+1] == chain[e], if any.
    certified records whether that observation is mathematically conclusive
    for the operation that produced the chain.
    """

    chain: tuple[Ideal, ...]
    stabilized_at: int | None
    certified: bool


def bracket_power(ideal: Ideal, e: int) -> Ideal:
    """The ideal generated by g^(p^e) over the generators; independent of them."""
    if e < 0:
        raise ValueError("negative bracket power")
    if e == 0:
        return ideal
    return Ideal(ideal.ctx, tuple(g.frobenius(e) for g in ideal.gens))


def _root_step(g: Polynomial) -> list[Polynomial]:
    """Generators of the smallest K with g in K^[p].

    Split every term c*x^b as c*x^(p*gamma + alpha) with alpha = b mod p and
    collect the p-th-root summand per residue class alpha (coefficient p-th
    roots are the identity on F_p).
    """
    ctx = g.ctx
    p = int(ctx.prime)
    classes: dict[Expo, dict[Expo, int]] = {}
    for e, c in g.terms:
        alpha = tuple(x % p for x in e)
        gamma = tuple(x // p for x in e)
        bucket = classes.setdefault(alpha, {})
        bucket[gamma] = (bucket.get(gamma, 0) + c) % p
    out = []
    for alpha in sorted(classes):
        poly = Polynomial(ctx, tuple(classes[alpha].items()))
        if poly:
            out.append(poly)
    return out


def frobenius_root_ideal(ideal: Ideal, e: int) -> Ideal:
    """The smallest K with ideal ⊆ K^[p^e], iterating the one-step root."""
    if e < 1:
        raise ValueError("Frobenius root needs a positive iterate")
    if not ideal.gens:
        raise ValueError("Frobenius root of the zero ideal")
    gens = list(ideal.gens)
    for _ in range(e):
        nxt = []
        seen = set()
        for g in gens:
            for h in _root_step(g):
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        gens = nxt
    return Ideal(ideal.ctx, tuple(gens))


def frobenius_root(g: Polynomial, e: int) -> Ideal:
    """The smallest ideal K with g in K^[p^e]."""
    if not g:
        raise ValueError("Frobenius root of the zero polynomial")
    return frobenius_root_ideal(Ideal(g.ctx, (g,)), e)


def frobenius_preimage(ideal: Ideal, e: int) -> Ideal:
    """The ideal {x : x^(p^e) ∈ ideal}.

    Computed as the preimage under the endomorphism x_i -> x_i^(p^e): adjoin
    fresh variables y_i, add y_i - x_i^q, eliminate the x block, rename back.
    """
    if e < 1:
        raise ValueError("Frobenius preimage needs a positive iterate")
    ctx = ideal.ctx
    if not ideal.gens:
        return ideal
    n = ctx.n
    fresh = []
    taken = set(ctx.vars)
    for v in ctx.vars:
        name = "@" + v
        while name in taken:
            name = "@" + name
        taken.add(name)
        fresh.append(name)
    ext = RingCtx(ctx.prime, ctx.vars + tuple(fresh), elim_order(n))
    zeros = (0,) * n

    def lift(f: Polynomial) -> Polynomial:
        return Polynomial(ext, tuple((e2 + zeros, c) for e2, c in f.terms))

    q = int(ctx.prime) ** e
    gens = [lift(g) for g in ideal.gens]
    for i in range(n):
        xi_q = ext.monomial(tuple(q if j == i else 0 for j in range(2 * n)))
        yi = ext.monomial(tuple(1 if j == n + i else 0 for j in range(2 * n)))
        gens.append(yi - xi_q)
    basis = Ideal(ext, tuple(gens)).groebner_basis(elim_order(n))
    kept = [g for g in basis if all(t[:n] == zeros for t, _ in g.terms)]
    projected = [Polynomial(ctx, tuple((t[n:], c) for t, c in g.terms)) for g in kept]
    return Ideal(ctx, tuple(projected))


def frobenius_closure(
    j: Ideal, ambient: Ideal, e_max: int = 4, proven_bound: int | None = None
) -> FrobeniusChainReport:
    """Ascending chain P_e = {x : x^(p^e) ∈ J^[p^e] + ambient}, modulo ambient.

    Stops at the first repeat or at e_max. A repeat alone does not certify
    the Frobenius closure; certified is set only when the caller supplies a
    proven stabilization bound covering the observed repeat.
    """
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    j._require_same_ring(ambient)
    chain = [j + ambient]
    stabilized = None
    for e in range(1, e_max + 1):
        target = bracket_power(j, e) + ambient
        pe = frobenius_preimage(target, e) + ambient
        chain.append(pe)
        if pe == chain[-2]:
            stabilized = e - 1
            break
    certified = (
        stabilized is not None and proven_bound is not None and stabilized <= proven_bound
    )
    return FrobeniusChainReport(tuple(chain), stabilized, certified)


class ClosureTester:
    """Membership tester for the Frobenius closure of J modulo an ambient ideal.

    Builds J^[p^e] + ambient once per exponent so repeated element tests
    share the cached Groebner bases.
    """

    def __init__(self, j: Ideal, ambient: Ideal, e_max: int = 4):
        if e_max < 1:
            raise ValueError("e_max must be at least 1")
        j._require_same_ring(ambient)
        self.e_max = e_max
        self.levels = [(e, bracket_power(j, e) + ambient) for e in range(1, e_max + 1)]

    def test(self, x: Polynomial) -> ClosureMembership:
        for e, target in self.levels:
            if x.frobenius(e) in target:
                q = int(x.ctx.prime) ** e
                return ClosureMembership(True, ClosureWitness(x, e, q), self.e_max)
        return ClosureMembership(False, None, self.e_max)


def in_frobenius_closure(x: Polynomial, j: Ideal, ambient: Ideal, e_max: int = 4) -> ClosureMembership:
    """Direct membership loop; a negative answer is explicitly inconclusive."""
    return ClosureTester(j, ambient, e_max).test(x)


def fedder_is_fpure(ideal: Ideal) -> bool:
    """Fedder's criterion: S/I is F-pure iff (I^[p] : I) is not inside m^[p]."""
    from .groebner import colon  # local import keeps module load order simple

    if not ideal.is_proper():
        raise ValueError("unit ideal")
    if not ideal.gens:
        return True  # the ambient polynomial ring itself
    p = int(ideal.ctx.prime)
    quotient = colon(bracket_power(ideal, 1), ideal)
    for g in quotient.gens:
        # g lies outside m^[p] iff some term has every exponent below p.
        if any(all(x < p for x in e) for e, _ in g.terms):
            return True
    return False


def hsl_hypersurface(f: Polynomial, e_max: int = 10) -> FrobeniusChainReport:
    """Stabilization exponent of the Frobenius action on a hypersurface.

    Descending chain C_0 = (1), C_{e+1} = root of f^(p-1)*C_e; the first
    repeat is permanent, so the reported index is certified. stabilized_at
    is None when the chain does not repeat within e_max.
    """
    if not f:
        raise ValueError("zero polynomial does not define a hypersurface")
    if f.total_degree() == 0:
        raise ValueError("unit polynomial does not define a hypersurface")
    ctx = f.ctx
    p = int(ctx.prime)
    multiplier = Ideal(ctx, (f ** (p - 1),))
    chain = [Ideal(ctx, (ctx.one(),))]
    for e in range(e_max + 1):
        nxt = frobenius_root_ideal(multiplier * chain[-1], 1)
        chain.append(nxt)
        if nxt == chain[-2]:
            return FrobeniusChainReport(tuple(chain), e, True)
    return FrobeniusChainReport(tuple(chain), None, False)


def hsl_number(f: Polynomial, e_max: int = 10) -> int | None:
    report = hsl_hypersurface(f, e_max)
    return report.stabilized_at
