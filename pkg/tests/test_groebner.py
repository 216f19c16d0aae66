"""Groebner bases and the ideal operations built on them."""

import random

import pytest

from fplab import (
    BudgetExceededError,
    GREVLEX,
    Ideal,
    buchberger,
    colon,
    eliminate,
    intersect,
)
from fplab.groebner import random_combination

from helpers import random_ideal, random_poly, regenerate, ring
from oracles import dict_mul, poly_dict, principal_lcm


def test_monomial_ideal_is_its_own_basis():
    ctx = ring("x,y", p=2)
    basis = buchberger([ctx.poly("x^2"), ctx.poly("x*y")])
    assert set(basis) == {ctx.poly("x^2"), ctx.poly("x*y")}


def test_linear_elimination():
    ctx = ring("x,y", p=2)
    basis = buchberger([ctx.poly("x + y"), ctx.poly("y")])
    assert set(basis) == {ctx.poly("x"), ctx.poly("y")}


def test_textbook_twisted_cubic():
    ctx = ring("x,y,z", p=5)
    basis = Ideal(ctx, (ctx.poly("y - x^2"), ctx.poly("z - x^3"))).groebner_basis()
    expected = {"x^2 + 4*y", "x*y + 4*z", "y^2 + 4*x*z"}
    assert {str(g) for g in basis} == expected


def test_normal_form_examples():
    ctx = ring("x,y", p=2)
    assert not Ideal(ctx, (ctx.poly("x^2"),)).normal_form(ctx.poly("x^2*y"))
    assert Ideal(ctx, (ctx.poly("y"),)).normal_form(ctx.poly("x + y")) == ctx.poly("x")


def test_membership_examples():
    ctx = ring("x,y", p=2)
    assert ctx.one() not in Ideal(ctx, (ctx.var("x"),))
    assert ctx.poly("x^2 + x*y") in Ideal(ctx, (ctx.var("x"),))


def test_ideal_equality_examples():
    ctx = ring("x,y", p=2)
    assert Ideal(ctx, (ctx.var("x"), ctx.var("y"))) == Ideal(ctx, (ctx.poly("x+y"), ctx.var("y")))
    assert Ideal(ctx, (ctx.var("x"),)) != Ideal(ctx, (ctx.poly("x^2"),))


def test_sum_and_product():
    ctx = ring("x,y", p=2)
    a, b = Ideal(ctx, (ctx.var("x"),)), Ideal(ctx, (ctx.var("y"),))
    assert a + b == Ideal(ctx, (ctx.var("x"), ctx.var("y")))
    assert a * b == Ideal(ctx, (ctx.poly("x*y"),))


def test_eliminate_examples():
    ctx = ring("x,y", p=2)
    assert eliminate(Ideal(ctx, (ctx.poly("x - y^2"),)), 1).is_zero()
    assert eliminate(Ideal(ctx, (ctx.var("x"), ctx.var("y"))), 1) == Ideal(ctx, (ctx.var("y"),))
    with pytest.raises(ValueError):
        eliminate(Ideal(ctx, (ctx.var("x"),)), 2)


def test_intersect_examples():
    ctx = ring("x,y", p=2)
    assert intersect(Ideal(ctx, (ctx.var("x"),)), Ideal(ctx, (ctx.var("y"),))) == Ideal(
        ctx, (ctx.poly("x*y"),)
    )
    # intersection with the zero ideal is zero
    assert intersect(Ideal(ctx, (ctx.var("x"),)), Ideal(ctx, ())).is_zero()


def test_intersect_three_coordinate_ideals():
    ctx = ring("x,y,u,v,w", p=2)
    pieces = [("u", "v", "w"), ("x", "u", "v"), ("y", "u", "v")]
    acc = None
    for names in pieces:
        piece = Ideal(ctx, tuple(ctx.var(n) for n in names))
        acc = piece if acc is None else intersect(acc, piece)
    assert acc == Ideal(ctx, (ctx.var("u"), ctx.var("v"), ctx.poly("x*y*w")))


def test_colon_examples():
    ctx = ring("x,y", p=2)
    x = ctx.var("x")
    assert colon(Ideal(ctx, (ctx.poly("x^2"),)), Ideal(ctx, (x,))) == Ideal(ctx, (x,))
    assert colon(Ideal(ctx, (ctx.poly("x*y"),)), Ideal(ctx, (ctx.var("y"),))) == Ideal(ctx, (x,))
    one_var = ring("x", p=2)
    assert colon(
        Ideal(one_var, (one_var.poly("x^4"),)), Ideal(one_var, (one_var.poly("x^2"),))
    ) == Ideal(one_var, (one_var.poly("x^2"),))
    with pytest.raises(ValueError):
        colon(Ideal(ctx, (x,)), Ideal(ctx, ()))


@pytest.mark.parametrize("p", [2, 3])
def test_reduced_basis_unique_under_permutation(p):
    rng = random.Random(5 * p)
    ctx = ring("x,y,z", p=p)
    for _ in range(20):
        ideal = random_ideal(rng, ctx)
        reference = Ideal(ctx, ideal.gens).groebner_basis()
        gens = list(ideal.gens)
        rng.shuffle(gens)
        assert Ideal(ctx, tuple(gens)).groebner_basis() == reference


@pytest.mark.parametrize("p", [2, 3])
def test_normal_form_idempotent_and_linear(p):
    rng = random.Random(11 * p)
    ctx = ring("x,y,z", p=p)
    for _ in range(20):
        ideal = random_ideal(rng, ctx)
        f, g = random_poly(rng, ctx), random_poly(rng, ctx)
        nf = ideal.normal_form
        assert nf(nf(f)) == nf(f)
        assert nf(f + g) == nf(nf(f) + nf(g))


@pytest.mark.parametrize("p", [2, 3])
def test_random_combinations_are_members(p):
    rng = random.Random(13 * p)
    ctx = ring("x,y,z", p=p)
    for _ in range(20):
        ideal = random_ideal(rng, ctx)
        assert random_combination(rng, ideal) in ideal


@pytest.mark.parametrize("p", [2, 3])
def test_principal_intersection_against_linear_algebra(p):
    rng = random.Random(17 * p)
    ctx = ring("x,y", p=p)
    for _ in range(15):
        f = random_poly(rng, ctx, max_deg=3, max_terms=3, nonzero=True)
        g = random_poly(rng, ctx, max_deg=3, max_terms=3, nonzero=True)
        ours = intersect(Ideal(ctx, (f,)), Ideal(ctx, (g,)))
        expected = principal_lcm(poly_dict(f), poly_dict(g), 2, p)
        from fplab import Polynomial

        assert ours == Ideal(ctx, (Polynomial(ctx, tuple(expected.items())),))


@pytest.mark.parametrize("p", [2, 3])
def test_colon_adjunction(p):
    rng = random.Random(19 * p)
    ctx = ring("x,y", p=p)
    for _ in range(10):
        a = random_ideal(rng, ctx, max_gens=2)
        b = random_ideal(rng, ctx, max_gens=2)
        q = colon(a, b)
        assert a.contains_ideal(b * q)


def test_bases_agree_after_regenerating_generators():
    rng = random.Random(23)
    ctx = ring("x,y,z", p=2)
    for _ in range(10):
        ideal = random_ideal(rng, ctx)
        assert regenerate(rng, ideal) == ideal


def test_pair_budget_is_enforced():
    ctx = ring("x,y,z", p=2)
    gens = (ctx.poly("x^2*y + z"), ctx.poly("y^2*z + x"), ctx.poly("z^2*x + y"))
    with pytest.raises(BudgetExceededError):
        buchberger(gens, GREVLEX, pair_budget=1)


def test_is_proper_and_zero():
    ctx = ring("x,y", p=2)
    assert Ideal(ctx, ()).is_zero()
    assert Ideal(ctx, ()).is_proper()
    assert not Ideal(ctx, (ctx.one(),)).is_proper()
    assert Ideal(ctx, (ctx.poly("x + 1"), ctx.var("x"))).groebner_basis() == (ctx.one(),)
