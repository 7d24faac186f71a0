from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from shintani import oracles
from shintani.errors import InputError, NotFundamental
from shintani.kernel.cyclotomic import Cyclotomic


def test_bernoulli_numbers():
    assert [oracles.bernoulli(k) for k in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0,
                                                        Fraction(-1, 30), 0, Fraction(1, 42)]
    assert oracles.zeta_negative(1) == Fraction(-1, 12)
    assert oracles.zeta_negative(3) == Fraction(1, 120)
    assert oracles.zeta_negative(0) == Fraction(-1, 2)
    assert oracles.zeta_negative(2) == 0


@given(st.integers(1, 12), st.fractions(-3, 3, max_denominator=9))
def test_bernoulli_polynomial_difference(k, x):
    # B_k(x + 1) - B_k(x) = k x^(k-1)
    assert oracles.bernoulli_poly(k, x + 1) - oracles.bernoulli_poly(k, x) == k * x ** (k - 1)


def test_kronecker_symbols():
    assert [oracles.kronecker(5, a) for a in range(1, 6)] == [1, -1, -1, 1, 0]
    assert [oracles.kronecker(-4, a) for a in range(1, 5)] == [1, 0, -1, 0]
    assert [oracles.kronecker(8, a) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert oracles.is_fundamental(12) and not oracles.is_fundamental(20)
    with pytest.raises(NotFundamental):
        oracles.kronecker_character(9)


def test_noncyclic_modulus_rejected():
    with pytest.raises(InputError):
        oracles.characters_mod(8)


def test_odd_character_mod_4():
    chi = oracles.kronecker_character(-4)
    assert chi.parity == 1
    assert oracles.gen_bernoulli(chi, 1) == Fraction(-1, 2)
    assert oracles.dirichlet_l_negative(chi, 0) == Fraction(1, 2)


@pytest.mark.parametrize("D", [3, 4, 5, 7, 9])
def test_character_groups(D):
    chars = oracles.characters_mod(D)
    units = sum(1 for a in range(1, D) if __import__("math").gcd(a, D) == 1)
    assert len(chars) == units
    assert all(c.check_multiplicative() for c in chars)
    assert sum(c.is_trivial() for c in chars) == 1
    # orthogonality: sum over the group of chi(a) vanishes for nontrivial chi
    for c in chars:
        s = sum((c(a).lift(12 * D) if c.N > 1 else c(a) for a in range(D)), Cyclotomic.zero(1) if c.N == 1 else Cyclotomic.zero(12 * D))
        assert (s == units) if c.is_trivial() else s.is_zero()


@pytest.mark.parametrize("D,value", [(5, Fraction(1, 30)), (8, Fraction(1, 12)), (12, Fraction(1, 6)),
                                     (13, Fraction(1, 6))])
def test_dedekind_minus_one(D, value):
    assert oracles.siegel_sum(D, 1) == value
    assert oracles.dedekind_zeta_negative(D, 1) == value


@pytest.mark.parametrize("D", [5, 8, 12, 13, 17, 21, 24, 28, 29, 33])
@pytest.mark.parametrize("k", [1, 3])
def test_two_dedekind_oracles_agree(D, k):
    assert oracles.siegel_sum(D, k) == oracles.dedekind_zeta_negative(D, k)


@pytest.mark.parametrize("s,a", [(0.25, 1), (0.25, 0.4), (-1.5, 0.75), (3, 0.2), (2.5, 1.5)])
def test_hurwitz_against_mpmath(s, a):
    with mpmath.workdps(30):
        assert abs(oracles.hurwitz_zeta(s, a) - mpmath.zeta(s, a)) < mpmath.mpf(10) ** -25


def test_l_functions_at_negative_integers_match_numeric():
    chi = oracles.kronecker_character(-3)
    with mpmath.workdps(30):
        for k in (0, 2):
            exact = oracles.dirichlet_l_negative(chi, k).to_rational()
            assert abs(oracles.dirichlet_l(chi, -k) - mpmath.mpf(exact.numerator) / exact.denominator) < 1e-20
        assert abs(oracles.riemann_zeta(-1) + mpmath.mpf(1) / 12) < 1e-25


@pytest.mark.parametrize("D", [5, 8, 13])
def test_dedekind_zeta_vanishes_at_zero(D):
    assert abs(oracles.dedekind_zeta_quadratic(D, 0.0)) < 1e-20
    assert oracles.dedekind_zeta_quadratic(D, -1) == oracles.dedekind_zeta_negative(D, 1)


def test_derivative_at_zero_golden():
    # zeta_F'(0) = -Reg = -log((1 + sqrt 5)/2) / 2 for D = 5 (h = 1)
    with mpmath.workdps(30):
        v = oracles.dedekind_zeta_derivative_at_zero(5)
        assert abs(v + mpmath.log((1 + mpmath.sqrt(5)) / 2) / 2) < 1e-25
    h = mpmath.mpf(1e-8)
    with mpmath.workdps(40):
        slope = (oracles.dedekind_zeta_quadratic(8, h, 40) - oracles.dedekind_zeta_quadratic(8, -h, 40)) / (2 * h)
    assert abs(slope - oracles.dedekind_zeta_derivative_at_zero(8)) < 1e-10
