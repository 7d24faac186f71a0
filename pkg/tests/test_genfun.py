import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from shintani import presets
from shintani.cones import ConeBasis, SignedDecomposition
from shintani.errors import BadPrime, InputError, NotRegular
from shintani.field import FLattice, prime_ideal
from shintani.genfun import (
    GenFun,
    Group,
    TestFunction,
    direct_sum,
    fundamental_identity_check,
    genfun_eval,
    genfun_raw,
    genfun_smoothed,
    lattice_points_in_box,
    nabla_k_at_zero,
    smooth_phi,
    taylor_at_zero,
)
from shintani.kernel.cyclotomic import Cyclotomic
from support import quadratic_setup, rational_setup

QQ, UQ, DQ = rational_setup()
Z = FLattice(QQ, [QQ.one])


def one_mod_three():
    return TestFunction(QQ, Z, FLattice(QQ, [QQ(3)]), {QQ.one: 1})


def test_test_function_basics():
    phi = one_mod_three()
    assert phi(QQ(4)) == 1 and phi(QQ(-2)) == 1 and phi(QQ(2)) == 0
    assert phi(QQ(Fraction(1, 2))) == 0
    assert phi.at_zero() == 0
    assert TestFunction(QQ, Z, Z, {}).is_zero()
    ind = TestFunction.indicator(QQ, Z)
    assert (ind - ind).is_zero()
    assert (ind.scaled(3))(QQ(5)) == 3
    with pytest.raises(InputError):
        TestFunction(QQ, FLattice(QQ, [QQ(3)]), Z, {})


def test_equivariance():
    F, U, _ = quadratic_setup(5)
    O = presets.maximal_order(F)
    assert TestFunction.indicator(F, O).check_equivariance(U.etas)
    # psi = (1, 1) picks up the sign of the norm; theta has norm -1
    assert not TestFunction.indicator(F, O, psi=(1, 1)).check_equivariance(U.etas)
    assert TestFunction.indicator(F, O, psi=(1, 1)).check_equivariance([U.etas[0] ** 2])


def test_box_points():
    B = ConeBasis([QQ.one], QQ)
    assert [a.rational() for a, _ in lattice_points_in_box(3, B, Z)] == [0, 1, 2]
    assert [a.rational() for a, _ in lattice_points_in_box(1, B, Z)] == [0]
    assert [a.rational() for a, _ in lattice_points_in_box(1, B, Z, closed=[False])] == [1]
    F = presets.quadratic_field(5)
    BF = ConeBasis([F.one, F.theta], F)
    assert len(lattice_points_in_box(1, BF, presets.maximal_order(F))) == 1


def test_raw_one_mod_three():
    g = genfun_raw(one_mod_three(), DQ)
    (c, alpha, denoms), = g.terms
    assert c == 1 and alpha == QQ.one
    assert [(z, f) for z, f in denoms] == [(1, QQ(3))]
    assert not g.regular
    assert genfun_raw(TestFunction(QQ, Z, Z, {}), DQ).is_empty()
    with pytest.raises(NotRegular):
        taylor_at_zero(g, 2)
    # q / (1 - q^3) at q = 1/2 is 4/7
    assert abs(genfun_eval(g, [math.log(2)]).mid - mpmath.mpf(4) / 7) < 1e-15


def test_eval_geometric():
    one = Cyclotomic.one(1)
    g = GenFun(QQ, 1, (Group(((one, QQ.one),), ((one, QQ.zero, (Fraction(0),)),)),))
    with mpmath.workprec(200):
        v = genfun_eval(g, [mpmath.log(2)])
        assert abs(v.mid - 2) < 1e-35 and v.rad < 1e-30


def test_smoothing_over_q():
    phi = TestFunction.indicator(QQ, Z)
    q = prime_ideal(QQ, 3, 0)
    sp = smooth_phi(phi, q)
    assert [sp(QQ(a)) for a in (0, 1, 2, 3)] == [-2, 1, 1, -2]
    g = genfun_smoothed(phi, DQ, q)
    assert g.regular
    s = taylor_at_zero(g, 2)
    assert s[(0,)] == -1
    assert s[(1,)] == Fraction(-2, 3)  # d/dy; the nabla convention flips the sign
    assert nabla_k_at_zero(g, 1) == Fraction(2, 3)
    assert nabla_k_at_zero(g, 0) == -1
    assert abs(mpmath.re(nabla_k_at_zero(g, 1, "numeric")) - mpmath.mpf(2) / 3) < 1e-30


def test_smoothing_golden_field():
    F, U, Dec = quadratic_setup(5)
    O = presets.maximal_order(F)
    phi = TestFunction.indicator(F, O)
    q = prime_ideal(F, 11, 4)
    sp = smooth_phi(phi, q)
    th = F.theta
    assert sp(th - 4) == -10 and sp(F(11)) == -10 and sp(F.one) == 1 and sp(th) == 1
    g = genfun_smoothed(phi, Dec, q)
    assert g.regular
    y = [1, 1]
    lhs = genfun_eval(g, y).mid
    rhs = mpmath.re(direct_sum(sp, Dec, y, cutoff=40))
    assert abs(lhs - rhs) < 1e-9


def test_bad_primes():
    phi = TestFunction.indicator(QQ, Z)
    B3 = SignedDecomposition(((ConeBasis([QQ(3)], QQ), 1),), QQ)
    with pytest.raises(BadPrime):
        genfun_smoothed(phi, B3, prime_ideal(QQ, 3, 0))
    with pytest.raises(BadPrime):
        smooth_phi(TestFunction(QQ, Z, FLattice(QQ, [QQ(3)]), {QQ.one: 1}), prime_ideal(QQ, 3, 0))


def test_fundamental_identity_golden():
    F, U, Dec = quadratic_setup(5)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    r = fundamental_identity_check(phi, Dec, U, [Fraction(13, 10), Fraction(7, 10)], K=8, cutoff=30)
    assert r.ok, r.as_dict()
    zero = TestFunction(F, presets.maximal_order(F), presets.maximal_order(F), {})
    assert fundamental_identity_check(zero, Dec, U, [1, 1]).difference == 0


def test_exact_taylor_theta_free():
    F, U, Dec = quadratic_setup(13)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q = prime_ideal(F, 17, 8 if (64 - 8 - 3) % 17 == 0 else [c for c in range(17) if (c * c - c - 3) % 17 == 0][0])
    g = genfun_smoothed(phi, Dec, q)
    v = nabla_k_at_zero(g, 1, "exact")
    w = mpmath.re(nabla_k_at_zero(g, 1, "numeric"))
    assert v.is_rational()
    assert abs(float(v.to_rational()) - w) < 1e-20


# ---------------------------------------------------------------- properties

@settings(max_examples=25, deadline=None)
@given(st.integers(2, 6), st.data())
def test_raw_matches_direct_sum_over_q(m, data):
    vals = {QQ(r): data.draw(st.integers(-3, 3)) for r in range(m)}
    phi = TestFunction(QQ, Z, FLattice(QQ, [QQ(m)]), vals)
    y = data.draw(st.fractions(Fraction(1, 2), 3, max_denominator=20))
    lhs = genfun_eval(genfun_raw(phi, DQ), [y]).mid
    rhs = mpmath.re(direct_sum(phi, DQ, [y], cutoff=200))
    assert abs(lhs - rhs) < 1e-20


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.integers(1, 4), st.fractions(Fraction(1, 3), 2, max_denominator=9))
def test_smoothed_equals_raw_of_smoothed_function(p, m, y):
    vals = {QQ(r): (r * r) % 3 - 1 for r in range(m)}
    phi = TestFunction(QQ, Z, FLattice(QQ, [QQ(m)]), vals)
    if p == m:
        return
    q = prime_ideal(QQ, p, 0)
    a = genfun_eval(genfun_smoothed(phi, DQ, q), [y]).mid
    b = genfun_eval(genfun_raw(smooth_phi(phi, q), DQ), [y]).mid
    assert abs(a - b) < 1e-20


@settings(max_examples=6, deadline=None)
@given(st.sampled_from([(5, 11, 4), (8, 7, 3), (12, 11, 5)]), st.lists(st.fractions(Fraction(1, 2), 2, max_denominator=7), min_size=2, max_size=2))
def test_smoothed_equals_raw_quadratic(data, y):
    D, p, c = data
    F, U, Dec = quadratic_setup(D)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q = prime_ideal(F, p, c)
    a = genfun_eval(genfun_smoothed(phi, Dec, q), y).mid
    b = genfun_eval(genfun_raw(smooth_phi(phi, q), Dec), y).mid
    assert abs(a - b) < 1e-15 * (1 + abs(b))


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 4), st.sampled_from([5, 7, 11]))
def test_exact_and_numeric_taylor_agree(k, p):
    phi = TestFunction.indicator(QQ, Z)
    g = genfun_smoothed(phi, DQ, prime_ideal(QQ, p, 0))
    e = nabla_k_at_zero(g, k)
    v = nabla_k_at_zero(g, k, "numeric")
    assert abs(complex(e) - complex(v)) < 1e-20
