from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagquant import berezin as bz
from flagquant.starprod import (
    ASYMPTOTIC_PAIRS, DEFAULT_ORDER_ENV, TEST_FUNCTIONS, StarContext, StarError,
    associativity_defect, asymptotic_row, berezin_asymptotics, build_left_operator, c1_direct,
    casimir_operator, constraint_residual, default_order, moment_operator, moment_operator_checks,
    opposite_star, poisson, star,
)
from flagquant.symbolic import I, FormalOperator, GaussRational, RationalExpr, parse_expr

FS = StarContext.fubini_study(1, 3)
FS2 = StarContext.fubini_study(1, 2)
FUNCS = [parse_expr(f) for f in TEST_FUNCTIONS]


def test_holomorphic_left_factor_is_multiplication():
    assert build_left_operator(FS, "z") == FormalOperator.mult(RationalExpr.z(), 3)
    s = star(FS, "z", "zbar")
    assert s[0] == parse_expr("z*zbar") and all(c.is_zero() for c in s.coefficients[1:])


def test_constant_is_scalar():
    assert build_left_operator(FS, "5/2") == FormalOperator.mult(Fraction(5, 2), 3)
    for g in FUNCS:
        s = star(FS, "-3", g)
        assert s[0] == g * -3 and all(c.is_zero() for c in s.coefficients[1:])


def test_first_order_operator_for_zbar():
    L = build_left_operator(FS, "zbar")
    # A_1 = g^-1 d/dz with g = (1+z zbar)^-2; A_1 1 = 0 leaves no multiplication part
    assert L.coeff(1, 0).is_zero()
    assert L.coeff(1, 1) == parse_expr("(1+z*zbar)^2")


def test_star_zbar_z():
    s = star(FS, "zbar", "z")
    assert s[0] == parse_expr("z*zbar")
    assert s[1] == parse_expr("(1+z*zbar)^2")
    assert s[2] == parse_expr("2*z^3*zbar^3 + 4*z^2*zbar^2 + 2*z*zbar")


def test_potential_scale():
    ctx = StarContext.fubini_study(4, 1)
    assert star(ctx, "zbar", "z")[1] == parse_expr("(1+z*zbar)^2/4")


def test_degenerate_potential():
    with pytest.raises(StarError):
        StarContext.from_series(["zbar"], 2)


def test_poisson_examples():
    assert poisson(FS, "z", "zbar") == parse_expr("i*(1+z*zbar)^2")
    for f in FUNCS:
        assert poisson(FS, f, f).is_zero()


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FUNCS), st.sampled_from(FUNCS), st.sampled_from(FUNCS))
def test_poisson_structure(f, g, h):
    assert poisson(FS, f, g) == -poisson(FS, g, f)
    assert poisson(FS, f, g * h) == poisson(FS, f, g) * h + g * poisson(FS, f, h)
    jac = (poisson(FS, f, poisson(FS, g, h)) + poisson(FS, g, poisson(FS, h, f))
           + poisson(FS, h, poisson(FS, f, g)))
    assert jac.is_zero()


@pytest.mark.parametrize("f, g", list(itertools.combinations(TEST_FUNCTIONS, 2)))
def test_axioms(f, g):
    s, t = star(FS2, f, g), star(FS2, g, f)
    assert s[0] == parse_expr(f) * parse_expr(g)
    assert s[1] == c1_direct(FS2, f, g)
    assert s[1] - t[1] == poisson(FS2, f, g) * I
    o = opposite_star(FS2, f, g)
    assert o.coefficients == t.coefficients
    assert o[1] - opposite_star(FS2, g, f)[1] == -(s[1] - t[1])


def test_spec_pair_antisymmetrization():
    f, g = "z*zbar/(1+z*zbar)", "z+zbar"
    assert star(FS, f, g)[1] - star(FS, g, f)[1] == poisson(FS, f, g) * I


@pytest.mark.parametrize("f", TEST_FUNCTIONS)
def test_left_operator_constraint(f):
    assert constraint_residual(FS, build_left_operator(FS, f)).is_zero()


@pytest.mark.parametrize("triple", [(0, 1, 2), (1, 3, 4), (2, 2, 4), (4, 0, 3), (3, 4, 1)])
def test_associativity(triple):
    f, g, h = (FUNCS[i] for i in triple)
    assert all(d.is_zero() for d in associativity_defect(FS, f, g, h, 2))


def test_separation_of_variables():
    rng = random.Random(1)
    for _ in range(10):
        a = RationalExpr.const(0)
        for d in range(rng.randint(1, 4) + 1):
            a = a + RationalExpr.monomial(d, 0, GaussRational(rng.randint(-5, 5), rng.randint(-2, 2)))
        b = a.conjugate()
        assert build_left_operator(FS2, a) == FormalOperator.mult(a, 2)
        for f in FUNCS[:3]:
            s = star(FS2, f, b)
            assert s[0] == f * b and all(c.is_zero() for c in s.coefficients[1:])
            o = opposite_star(FS2, f, a)
            assert o[0] == f * a and all(c.is_zero() for c in o.coefficients[1:])


def test_deformed_potential():
    ctx = StarContext.from_series(["-z/(1+z*zbar)", "-2*z/(1+z*zbar)"], 2)
    for f, g in itertools.combinations(FUNCS, 2):
        s, t = star(ctx, f, g), star(ctx, g, f)
        assert s[0] == f * g
        assert s[1] - t[1] == poisson(ctx, f, g) * I
    for f in FUNCS:
        assert constraint_residual(ctx, build_left_operator(ctx, f)).is_zero()


def test_moment_operators():
    checks = moment_operator_checks(3)
    assert all(c.passed for c in checks), [c.name for c in checks if not c.passed]
    cas = casimir_operator(3)
    series = cas.scalar_series()
    # nu^-2 + 2 nu^-1; at nu = 1/n this is n(n+2)
    assert {d: c for d, c in series.items() if not c.is_zero()} == {-2: 1, -1: 2}
    assert moment_operator("E", 3).apply(RationalExpr.const(1)) == {-1: bz.sigma1("E")}


@pytest.mark.parametrize("n", [1, 3, 5])
def test_identity_symbol_is_a_unit(n):
    model = bz.Cp1Model(n)
    g = bz.sigma1("H", 1)
    B = bz.operator_from_symbol(model, g)
    assert bz.covariant_symbol(model, bz.mat_mul(bz.identity_matrix(model.N), B)) == g


def test_asymptotics_small():
    rep = berezin_asymptotics("fH2", (4, 8))
    assert [r.n for r in rep.rows] == [4, 8]
    assert rep.rows[1].max_error < rep.rows[0].max_error
    assert rep.to_csv().splitlines()[0] == "pair,n,max_error"
    zero = asymptotic_row(*ASYMPTOTIC_PAIRS["fH"], 6)
    assert zero.max_error == 0


def test_asymptotic_c1_matches_exact_limit():
    # n (f *_n g - f g) -> C_1(f, g) at a sample point
    f, g = parse_expr(ASYMPTOTIC_PAIRS["fEfF"][0]), parse_expr(ASYMPTOTIC_PAIRS["fEfF"][1])
    c1 = c1_direct(FS, f, g).evaluate(Fraction(1, 2))
    prev = None
    for n in (4, 8, 16):
        m = bz.Cp1Model(n)
        AB = bz.mat_mul(bz.operator_from_symbol(m, f), bz.operator_from_symbol(m, g))
        v = (bz.covariant_symbol_at(m, AB, Fraction(1, 2)) - (f * g).evaluate(Fraction(1, 2))) * n
        err = abs(complex(v - c1))
        assert prev is None or err <= prev
        prev = err


def test_default_order(monkeypatch):
    monkeypatch.delenv(DEFAULT_ORDER_ENV, raising=False)
    assert default_order() == 3
    monkeypatch.setenv(DEFAULT_ORDER_ENV, "2")
    assert default_order() == 2
    assert StarContext.fubini_study().order == 2
    monkeypatch.setenv(DEFAULT_ORDER_ENV, "x")
    with pytest.raises(StarError):
        default_order()
