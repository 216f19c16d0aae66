"""Bracket powers, Frobenius roots, preimages, closures, Fedder, HSL chains."""

import random

import pytest

from fplab import (
    ClosureTester,
    Ideal,
    Polynomial,
    Prime,
    bracket_power,
    fedder_is_fpure,
    frobenius_closure,
    frobenius_preimage,
    frobenius_root,
    frobenius_root_ideal,
    hsl_hypersurface,
    in_frobenius_closure,
    load_builtin_session,
)
from fplab.verify import hat_monomial_ideal, sharpness_family

from helpers import all_monomial_subsets, random_ideal, random_poly, regenerate, ring


def test_bracket_examples():
    ctx = ring("x,y", p=2)
    xy = Ideal(ctx, (ctx.var("x"), ctx.var("y")))
    assert bracket_power(xy, 1) == Ideal(ctx, (ctx.poly("x^2"), ctx.poly("y^2")))
    assert bracket_power(xy, 0) == xy
    ctx5 = ring("x,y,u,v,w", p=2)
    j = Ideal(ctx5, (ctx5.var("w"), ctx5.poly("y+v"), ctx5.poly("x+u")))
    expected = Ideal(ctx5, (ctx5.poly("w^2"), ctx5.poly("y^2+v^2"), ctx5.poly("x^2+u^2")))
    assert bracket_power(j, 1) == expected


@pytest.mark.parametrize("p", [2, 3])
def test_bracket_power_independent_of_generators(p):
    rng = random.Random(43 * p)
    ctx = ring("x,y,z", p=p)
    for _ in range(10):
        ideal = random_ideal(rng, ctx, max_deg=2)
        other = regenerate(rng, ideal)
        assert bracket_power(ideal, 1) == bracket_power(other, 1)


def test_root_examples():
    ctx = ring("x,y", p=2)
    assert frobenius_root(ctx.var("x"), 1) == Ideal(ctx, (ctx.one(),))
    assert frobenius_root(ctx.poly("x^2*y^3"), 1) == Ideal(ctx, (ctx.poly("x*y"),))
    assert frobenius_root_ideal(
        Ideal(ctx, (ctx.poly("x^2"), ctx.poly("y^2"))), 1
    ) == Ideal(ctx, (ctx.var("x"), ctx.var("y")))
    with pytest.raises(ValueError):
        frobenius_root(ctx.zero(), 1)


def test_root_of_sharpness_family_is_hat_ideal():
    f, _ = sharpness_family(3, Prime(2))
    assert frobenius_root(f, 1) == hat_monomial_ideal(f.ctx)
    again = frobenius_root_ideal(Ideal(f.ctx, (f,)) * frobenius_root(f, 1), 1)
    assert again == frobenius_root(f, 1)


def test_iterated_root_of_cube_matches_one_step_root():
    # the two-step root of f^(p+1) collapses to the one-step root of f
    f, _ = sharpness_family(3, Prime(2))
    assert frobenius_root(f ** 3, 2) == frobenius_root(f, 1)


@pytest.mark.parametrize("p", [2, 3])
def test_root_adjunction(p):
    rng = random.Random(47 * p)
    ctx = ring("x,y,z", p=p)
    for _ in range(20):
        g = random_poly(rng, ctx, max_deg=4, nonzero=True)
        for e in (1, 2):
            root = frobenius_root(g, e)
            assert g in bracket_power(root, e)


def test_root_minimality_dropping_a_generator():
    # g lies in K'^[p] for a pruned root K' exactly when the dropped
    # generator was redundant; with irredundant generators dropping always
    # breaks membership.
    rng = random.Random(53)
    ctx = ring("x,y", p=2)
    for _ in range(20):
        g = random_poly(rng, ctx, max_deg=4, nonzero=True)
        root = frobenius_root(g, 1)
        if len(root.gens) < 2:
            continue
        for skip in range(len(root.gens)):
            smaller = Ideal(ctx, root.gens[:skip] + root.gens[skip + 1 :])
            redundant = root.gens[skip] in smaller
            assert (g in bracket_power(smaller, 1)) == redundant


def test_root_minimality_on_spread_monomials():
    # monomials in distinct residue classes with incomparable quotients give
    # an irredundant root, so every drop breaks membership
    ctx = ring("x,y", p=2)
    g = ctx.poly("x^4 + x*y^4 + x^3*y^3")
    root = frobenius_root(g, 1)
    assert root == Ideal(ctx, (ctx.poly("x^2"), ctx.poly("y^2"), ctx.poly("x*y")))
    assert len(root.gens) == 3
    for skip in range(len(root.gens)):
        smaller = Ideal(ctx, root.gens[:skip] + root.gens[skip + 1 :])
        assert g not in bracket_power(smaller, 1)


def test_preimage_examples():
    ctx = ring("x,y", p=2)
    assert frobenius_preimage(Ideal(ctx, (ctx.poly("x^2"),)), 1) == Ideal(ctx, (ctx.var("x"),))
    assert frobenius_preimage(Ideal(ctx, (ctx.poly("x^2 + y^2"),)), 1) == Ideal(
        ctx, (ctx.poly("x + y"),)
    )
    assert frobenius_preimage(Ideal(ctx, ()), 1).is_zero()


@pytest.mark.parametrize("p", [2, 3])
def test_preimage_exact_both_directions(p):
    rng = random.Random(59 * p)
    ctx = ring("x,y", p=p)
    for _ in range(10):
        a = random_ideal(rng, ctx, max_gens=2, max_deg=2)
        pre = frobenius_preimage(a, 1)
        for x in pre.gens:
            assert x.frobenius(1) in a
        for _ in range(3):
            x = random_poly(rng, ctx, max_deg=2)
            assert (x.frobenius(1) in a) == (x in pre)


def test_preimage_inside_root():
    rng = random.Random(61)
    ctx = ring("x,y", p=2)
    for _ in range(10):
        a = random_ideal(rng, ctx, max_gens=2, max_deg=3)
        pre = frobenius_preimage(a, 1)
        root = frobenius_root_ideal(a, 1)
        assert root.contains_ideal(pre)


def test_closure_in_regular_ring_is_trivial():
    ctx = ring("x,y", p=2)
    j = Ideal(ctx, (ctx.poly("x^2"), ctx.var("y")))
    rep = frobenius_closure(j, Ideal(ctx, ()), e_max=2)
    assert rep.stabilized_at == 0
    assert all(step == j for step in rep.chain)
    assert not rep.certified
    certified = frobenius_closure(j, Ideal(ctx, ()), e_max=2, proven_bound=0)
    assert certified.certified


def test_closure_stays_put_in_f_pure_hypersurface():
    # J = (x+y) is Frobenius closed modulo the product hypersurface
    ctx = ring("x,y", p=2)
    j = Ideal(ctx, (ctx.poly("x + y"),))
    hyper = Ideal(ctx, (ctx.poly("x*y"),))
    rep = frobenius_closure(j, hyper, e_max=2)
    assert rep.stabilized_at == 0
    assert rep.chain[1] == j + hyper


def _example2():
    session = load_builtin_session("example2.fpl")
    return session.ctx, session.ideals["I"], session.ideals["J"], session.polys["witness"]


def test_example2_closure_chain():
    ctx, big, j, witness = _example2()
    rep = frobenius_closure(j, big, e_max=2)
    assert rep.stabilized_at == 1
    assert witness not in rep.chain[0]
    assert witness in rep.chain[1]
    # ascending chain
    for a, b in zip(rep.chain, rep.chain[1:]):
        assert b.contains_ideal(a)


def test_example2_bracket_identity_at_stabilization():
    ctx, big, j, _ = _example2()
    rep = frobenius_closure(j, big, e_max=2)
    q_exp = rep.stabilized_at
    stable = rep.chain[q_exp]
    assert bracket_power(stable, q_exp) + big == bracket_power(j, q_exp) + big


def test_in_frobenius_closure_examples():
    ctx, big, j, witness = _example2()
    res = in_frobenius_closure(witness, j, big, 2)
    assert res.member and res.witness.e == 1 and res.witness.q == 2
    assert witness not in (j + big)
    # the unit is never in a proper closure
    assert not in_frobenius_closure(ctx.one(), j, big, 2).member
    # members of J land at the first step
    assert in_frobenius_closure(j.gens[0], j, big, 2).witness.e == 1


def test_fedder_examples():
    one_var = ring("x", p=2)
    assert not fedder_is_fpure(Ideal(one_var, (one_var.poly("x^2"),)))
    ctx = ring("x,y", p=2)
    assert fedder_is_fpure(Ideal(ctx, (ctx.poly("x*y"),)))
    with pytest.raises(ValueError):
        fedder_is_fpure(Ideal(ctx, (ctx.one(),)))


def test_fedder_example2_components():
    session = load_builtin_session("example2.fpl")
    i1, i2 = session.ideals["I1"], session.ideals["I2"]
    assert fedder_is_fpure(i1)
    assert fedder_is_fpure(i2)
    assert fedder_is_fpure(i1 + i2)


def test_hsl_examples():
    ctx = ring("x,y", p=2)
    assert hsl_hypersurface(ctx.poly("x*y")).stabilized_at == 0
    rep = hsl_hypersurface(ctx.poly("x^2"))
    assert rep.stabilized_at == 1
    assert rep.certified
    # chain starts at the unit ideal, descends, and repeats at the end
    assert rep.chain[0] == Ideal(ctx, (ctx.one(),))
    for a, b in zip(rep.chain, rep.chain[1:]):
        assert a.contains_ideal(b)
    assert rep.chain[-1] == rep.chain[-2]
    with pytest.raises(ValueError):
        hsl_hypersurface(ctx.zero())
    with pytest.raises(ValueError):
        hsl_hypersurface(ctx.one())


@pytest.mark.parametrize("n", [3, 4])
def test_hsl_of_sharpness_family(n):
    f, _ = sharpness_family(n, Prime(2))
    rep = hsl_hypersurface(f)
    assert rep.stabilized_at == 1
    assert rep.chain[1] == hat_monomial_ideal(f.ctx)


def test_fedder_iff_trivial_hsl_on_squarefree_monomials():
    for names in ("x", "x,y", "x,y,z", "x,y,z,w"):
        ctx = ring(names, p=2)
        for f in all_monomial_subsets(ctx):
            fpure = fedder_is_fpure(Ideal(ctx, (f,)))
            eta = hsl_hypersurface(f).stabilized_at
            assert fpure == (eta == 0)


def test_fedder_iff_trivial_hsl_on_random_hypersurfaces():
    from helpers import random_homogeneous_poly

    rng = random.Random(67)
    ctx = ring("x,y,z", p=2)
    for _ in range(50):
        f = random_homogeneous_poly(rng, ctx, rng.randint(1, 4))
        fpure = fedder_is_fpure(Ideal(ctx, (f,)))
        eta = hsl_hypersurface(f).stabilized_at
        assert fpure == (eta == 0)


def test_closure_tester_reuses_bases():
    ctx, big, j, witness = _example2()
    tester = ClosureTester(j, big, 2)
    assert tester.test(witness).member
    assert not tester.test(ctx.one()).member
