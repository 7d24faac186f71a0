import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from shintani import oracles, presets
from shintani.errors import (
    InputError,
    NonApplicable,
    NonEmptyIk,
    PhiZeroAtOrigin,
    PrecisionExhausted,
    PsiNotTrivial,
)
from shintani.field import NumberField, UnitSystem, prime_ideal, validate_units
from shintani.cones import sigma_decomposition
from shintani.genfun import TestFunction
from shintani.kernel.cyclotomic import Cyclotomic
from shintani.lvalues import (
    I_k,
    auto_prime,
    hecke_special,
    integrality_check,
    l_special_exact,
    leading_coefficient_numeric,
    mellin_value,
    order_zero_at_origin,
    reconstruct_rational,
)
from support import dirichlet_value, quadratic_setup, rational_setup, riemann_value


def test_I_k():
    assert I_k((0,), 1) == [] and I_k((0,), 2) == [0]
    assert I_k((1, 0), 0) == [1] and I_k((1, 1), 2) == []


def test_riemann_values():
    assert riemann_value(1, 3).value == Fraction(2, 3)
    assert riemann_value(3, 3).value == Fraction(-2, 3)
    assert riemann_value(1, 3).divided == Fraction(-1, 12)
    assert riemann_value(5, 7).divided == oracles.zeta_negative(5)


def test_zero_function():
    F, U, Dec = rational_setup()
    Z = presets.maximal_order(F)
    zero = TestFunction(F, Z, Z, {})
    v = l_special_exact(zero, 1, Dec, U, prime_ideal(F, 3, 0))
    assert v.value == 0
    assert leading_coefficient_numeric(zero, 1, Dec, U, prime_ideal(F, 3, 0)) == 0
    assert mellin_value(zero, Dec, U, prime_ideal(F, 3, 0), 0.25) == 0


def test_guards():
    F, U, Dec = rational_setup()
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q = prime_ideal(F, 3, 0)
    with pytest.raises(NonEmptyIk):
        l_special_exact(phi, 2, Dec, U, q)
    with pytest.raises(NonApplicable):
        l_special_exact(TestFunction.indicator(F, presets.maximal_order(F), psi=(1,)), 0, Dec, U, q)
    with pytest.raises(InputError):
        mellin_value(presets.euler_trick_function(F), Dec, U, q, 1.5)


def test_odd_character_mod_4_at_zero():
    chi = oracles.kronecker_character(-4)
    v = dirichlet_value(chi, 0)
    assert v.divided == Fraction(1, 2)
    assert v.value == Fraction(1, 2) * (1 - chi(v.p) * v.p)


def test_quartic_character_mod_5():
    chi = [c for c in oracles.characters_mod(5) if c.N == 4][0]
    for k in (0, 2, 4):
        assert dirichlet_value(chi, k).divided == oracles.dirichlet_l_negative(chi, k)


def test_auto_prime():
    F, U, Dec = quadratic_setup(5)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q, p, c = auto_prime(phi, Dec, 1)
    assert (p, c) == (11, 4) or (p == 11 and (c * c - c - 1) % 11 == 0)
    assert p > 2 * 2 + 1


def test_hecke_golden():
    setup, Dec, U = presets.dedekind_setup(5, 1, prime_ideal(presets.quadratic_field(5), 11, 4))
    v = hecke_special(setup, 1, Dec, U)
    assert v.value == -4 and v.euler_factor == 1 - 121 and v.divided == Fraction(1, 30)
    assert integrality_check(v)


def test_hecke_needs_index_two():
    F, U4, Dec4 = quadratic_setup(5, totally_positive=True)
    setup, _, _ = presets.dedekind_setup(5, 1)
    with pytest.raises(NonApplicable):
        hecke_special(setup, 1, Dec4, U4)


def test_index_four_group_gives_the_same_value():
    F, U4, Dec4 = quadratic_setup(5, totally_positive=True)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q = prime_ideal(F, 11, 4)
    v = l_special_exact(phi, 1, Dec4, U4, q, chi_q=1)
    assert v.value == -4


def test_integrality_guards():
    v = riemann_value(1, 3)
    with pytest.raises(NonApplicable):
        integrality_check(v)
    with pytest.raises(NonApplicable):
        integrality_check(riemann_value(3, 5))  # -26/5: the prime is too small
    assert integrality_check(riemann_value(1, 5))  # (1 - 25)(-1/12) = 2
    assert integrality_check(riemann_value(3, 7))  # (1 - 7^4)/120 = -20
    z = riemann_value(1, 5)
    z.value = Cyclotomic.zero(1)
    assert integrality_check(z)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([5, 7, 11, 13, 17, 19, 23]), st.sampled_from([1, 3, 5, 7]))
def test_riemann_property(p, k):
    v = riemann_value(k, p)
    assert v.divided == oracles.zeta_negative(k)
    if p > 1 + (k + 1):
        assert integrality_check(v)


def test_genus_character():
    setup, Dec, U = presets.genus_setup(12, 2)
    v = hecke_special(setup, 2, Dec, U)
    oracle = (oracles.dirichlet_l_negative(oracles.kronecker_character(-3), 2)
              * oracles.dirichlet_l_negative(oracles.kronecker_character(-4), 2))
    assert (v.value, v.euler_factor, v.divided) == (148, 1332, oracle) and oracle == Fraction(1, 9)
    with pytest.raises(InputError):
        presets.genus_setup(5, 2)


def test_reconstruct_rational():
    with mpmath.workdps(50):
        x = mpmath.mpf(-1) / 21 + mpmath.mpf(10) ** -40
        assert reconstruct_rational(x, mpmath.mpf(10) ** -39, 1000) == Fraction(-1, 21)
        with pytest.raises(PrecisionExhausted):
            reconstruct_rational(x, mpmath.mpf(10) ** -3, 1000)


def _cubic(units, index):
    F = NumberField([-1, -2, 1, 1])  # cyclic cubic field of conductor 7
    U = validate_units(UnitSystem(F, units(F.theta), index)).units
    return F, U, sigma_decomposition(U)


@pytest.mark.parametrize("units,index", [
    (lambda t: (t, t + 1), 2),
    (lambda t: (t, t - 1), 4),
    (lambda t: (t * t, (t + 1) * (t + 1)), 8),
])
def test_cubic_field_numeric(units, index):
    F, U, Dec = _cubic(units, index)
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q, p, _ = auto_prime(phi, Dec, 1)
    v = l_special_exact(phi, 1, Dec, U, q, chi_q=1, mode="numeric", denominator_bound=10**4)
    chis = [c for c in oracles.characters_mod(7) if c.N == 3]
    oracle = oracles.zeta_negative(1) * oracles.dirichlet_l_negative(chis[0], 1) * oracles.dirichlet_l_negative(chis[1], 1)
    assert oracle == Fraction(-1, 21)
    assert v.divided == oracle


def test_order_zero():
    F, U, _ = quadratic_setup(5, totally_positive=True)
    O = presets.maximal_order(F)
    r = order_zero_at_origin(TestFunction.indicator(F, O), U)
    assert r.order == 1
    assert abs(float(r.leading.mid) + 0.2406059125298017) < 1e-15
    with pytest.raises(PhiZeroAtOrigin):
        order_zero_at_origin(presets.euler_trick_function(F), U)
    with pytest.raises(PsiNotTrivial):
        order_zero_at_origin(TestFunction.indicator(F, O, psi=(1, 1)), U)
    Fq, Uq, _ = rational_setup()
    rq = order_zero_at_origin(TestFunction.indicator(Fq, presets.maximal_order(Fq)), Uq)
    assert rq.order == 0 and rq.leading.mid == -mpmath.mpf(1) / 2


def test_leading_coefficient_without_zero():
    F, U, Dec = rational_setup()
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    v = leading_coefficient_numeric(phi, 1, Dec, U, prime_ideal(F, 3, 0))
    assert abs(v - 2 / 3) < 1e-12


def test_leading_coefficient_rational_zero():
    # L = (1 - 2^-s) zeta(s) vanishes at 0 with slope log 2 * zeta(0); times (1 - 3)
    F, U, Dec = rational_setup()
    v = leading_coefficient_numeric(presets.euler_trick_function(F), 0, Dec, U, prime_ideal(F, 3, 0))
    assert abs(v - math.log(2)) < 1e-4


def test_leading_coefficient_golden_zero():
    F, U, Dec = quadratic_setup(5)
    v = leading_coefficient_numeric(presets.euler_trick_function(F), 0, Dec, U, prime_ideal(F, 11, 4))
    expected = math.log(4) * (1 - 11) * float(oracles.dedekind_zeta_derivative_at_zero(5))
    assert abs(v - expected) < 1e-4


def test_mellin_rational():
    F, U, Dec = rational_setup()
    s = 0.25
    val = mellin_value(presets.euler_trick_function(F), Dec, U, prime_ideal(F, 3, 0), s)
    with mpmath.workdps(30):
        o = (1 - mpmath.mpf(2) ** -s) * (1 - mpmath.mpf(3) ** (1 - s)) * oracles.riemann_zeta(s)
    assert abs(val - o) < 1e-4


def test_principal_generator():
    F = presets.quadratic_field(5)
    q = prime_ideal(F, 11, 4)
    w = presets.principal_generator(q)
    assert abs(w.norm()) == 11 and q.contains(w)
    assert presets.euler_trick_function(F).at_zero() == 0
