"""Ready-made fields, unit groups and test functions for common L-functions."""

from __future__ import annotations

from itertools import product

from .cones import SignedDecomposition, sigma_decomposition
from .errors import InputError
from .field import FieldElement, FLattice, NumberField, UnitSystem, fundamental_unit_quadratic
from .genfun import TestFunction
from .kernel.cyclotomic import Cyclotomic
from .lvalues import HeckeClass, HeckeSetup, auto_prime
from .oracles import DirichletChar, is_fundamental


def rational_field() -> NumberField:
    return NumberField([0, 1])


def quadratic_field(D: int) -> NumberField:
    """Q(sqrt D) with theta = (1 + sqrt D)/2 for D = 1 mod 4 and theta = sqrt(D/4) otherwise."""
    if not is_fundamental(D) or D <= 0:
        raise InputError(f"{D} is not a positive fundamental discriminant")
    if D % 4 == 1:
        return NumberField([-(D - 1) // 4, -1, 1])
    return NumberField([-(D // 4), 0, 1])


def maximal_order(F: NumberField) -> FLattice:
    return F.maximal_order_guess


def scaled(L: FLattice, c) -> FLattice:
    return FLattice(L.F, [b * c for b in L.basis])


def unit_group(F: NumberField, totally_positive: bool = False) -> UnitSystem:
    """V = <eps> (index 2), or its totally positive part when asked."""
    if F.n == 1:
        return UnitSystem(F, (), 2, True)
    if F.n != 2:
        raise InputError("automatic units are available for n <= 2; give generators explicitly")
    eps = fundamental_unit_quadratic(F)
    tp = eps.is_totally_positive()
    if totally_positive and not tp:
        return UnitSystem(F, (eps * eps,), 4, True)
    return UnitSystem(F, (eps,), 2, tp)


def decomposition(U: UnitSystem) -> SignedDecomposition:
    return sigma_decomposition(U)


def dirichlet_test_function(chi: DirichletChar) -> TestFunction:
    """phi = chi on Z, periodic mod the conductor, psi = sign^{parity}."""
    F = rational_field()
    Z = FLattice(F, [F.one])
    per = FLattice(F, [F(chi.modulus)])
    return TestFunction.from_callable(F, Z, per, lambda r: chi(int(r.rational())), (chi.parity,), chi.N)


def principal_generator(q: FLattice, bound: int = 60) -> FieldElement:
    """An element of q whose norm has absolute value Nq (so it generates q)."""
    from .genfun import ideal_norm

    p = ideal_norm(q)
    best = None
    for ms in product(range(-bound, bound + 1), repeat=q.F.n):
        if not any(ms):
            continue
        x = sum((b * m for b, m in zip(q.basis, ms)), q.F.zero)
        if abs(x.norm()) == p:
            if best is None or sum(map(abs, ms)) < best[0]:
                best = (sum(map(abs, ms)), x)
    if best is None:
        raise InputError("no generator found; q may not be principal")
    return best[1]


def principal_setup(phi: TestFunction, D: SignedDecomposition, k: int, q=None) -> HeckeSetup:
    """Class number one: chi((alpha)) = phi(alpha) psi(alpha), one class represented by O."""
    F = phi.field
    if q is None:
        q, _, _ = auto_prime(phi, D, k)
    w = principal_generator(q) if F.n > 1 else F(q.basis[0].rational())
    chi_q = phi(w) * phi.psi_of(w)
    return HeckeSetup(F, [HeckeClass(phi, Cyclotomic.one(phi.N), 1)], phi.psi, q, chi_q)


def dedekind_setup(D_disc: int, k: int, q=None):
    """Setup for zeta_F(-k), F = Q(sqrt D) of class number one, k odd."""
    if k % 2 == 0:
        raise InputError("zeta_F(-k) vanishes for even k >= 2; use odd k")
    F = quadratic_field(D_disc)
    U = unit_group(F)
    Dec = decomposition(U)
    phi = TestFunction.indicator(F, maximal_order(F))
    return principal_setup(phi, Dec, k, q), Dec, U


def genus_setup(D_disc: int, k: int, q=None):
    """The character alpha -> sign N(alpha) on principal ideals, valid when every unit has norm +1."""
    F = quadratic_field(D_disc)
    U = unit_group(F)
    if fundamental_unit_quadratic(F).norm() != 1:
        raise InputError("the sign of the norm is not a character on ideals when N(eps) = -1")
    if k % 2:
        raise InputError("the sign-of-norm character needs even k")
    Dec = decomposition(U)
    phi = TestFunction.indicator(F, maximal_order(F), psi=(1, 1))
    return principal_setup(phi, Dec, k, q), Dec, U


def euler_trick_function(F: NumberField, m: int = 2) -> TestFunction:
    """1_O - 1_{mO}: vanishes at 0, with L = (1 - N(m)^{-s}) zeta_F."""
    O = maximal_order(F)
    return TestFunction.indicator(F, O) - TestFunction.indicator(F, scaled(O, m))
