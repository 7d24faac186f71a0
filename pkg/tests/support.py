"""Small builders shared by the test modules."""

from shintani import presets
from shintani.field import prime_ideal
from shintani.genfun import TestFunction
from shintani.lvalues import l_special_exact


def rational_setup():
    F = presets.rational_field()
    U = presets.unit_group(F)
    return F, U, presets.decomposition(U)


def quadratic_setup(D, totally_positive=False):
    F = presets.quadratic_field(D)
    U = presets.unit_group(F, totally_positive)
    return F, U, presets.decomposition(U)


def riemann_value(k, p):
    F, U, Dec = rational_setup()
    phi = TestFunction.indicator(F, presets.maximal_order(F))
    q = prime_ideal(F, p, 0)
    return l_special_exact(phi, k, Dec, U, q, chi_q=phi(F(p)))


def dirichlet_value(chi, k, p=None):
    from shintani.lvalues import auto_prime

    F, U, Dec = rational_setup()
    phi = presets.dirichlet_test_function(chi)
    if p is None:
        q, p, _ = auto_prime(phi, Dec, k)
    else:
        q = prime_ideal(F, p, 0)
    return l_special_exact(phi, k, Dec, U, q, chi_q=chi(p))
