"""Special values of L(phi, psi, s) and of Hecke L-functions.

At s = -k with I_k = {i : a_i = k mod 2} empty, L(phi_q, psi, -k) equals
2^n / [U_F : V] times the derivative (prod_i -d/dy_i)^k of the smoothed
generating function at y = 0; dividing by the Euler factor recovers the
L-value itself. Near s = 0 the leading coefficient is -phi(0) Reg(U_F), and
for nonempty I_k it is an integral of the generating function, evaluated
here by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np

from .cones import SignedDecomposition, regulator
from .errors import (
    BadPrime,
    InputError,
    NonApplicable,
    NonEmptyIk,
    PhiZeroAtOrigin,
    PrecisionExhausted,
    PsiNotTrivial,
    QuadratureNotConverged,
)
from .field import FLattice, NumberField, UnitSystem, degree_one_roots, prime_ideal
from .genfun import (
    FastEvaluator,
    GenFun,
    TestFunction,
    genfun_smoothed,
    ideal_norm,
    nabla_k_at_zero,
    valuation,
)
from .kernel.ball import RealBall
from .kernel.cyclotomic import Cyclotomic
from .quadrature import half_line_integral, quadrant_integral, strip_angles


def I_k(psi: Sequence[int], k: int) -> list[int]:
    return [i for i, a in enumerate(psi) if (a - k) % 2 == 0]


@dataclass
class SpecialValue:
    k: int
    value: object  # Cyclotomic (exact) or mpmath number
    euler_factor: Cyclotomic | None
    divided: Cyclotomic | None
    zero_order: int
    mode: str
    p: int
    n: int
    notes: list = dfield(default_factory=list)

    def as_dict(self) -> dict:
        def fmt(x):
            if x is None:
                return None
            if isinstance(x, Cyclotomic):
                return str(x)
            return mpmath.nstr(x, 15)

        return {
            "k": self.k,
            "value": fmt(self.value),
            "euler_factor": fmt(self.euler_factor),
            "divided": fmt(self.divided),
            "zero_order": self.zero_order,
            "mode": self.mode,
            "p": self.p,
            "notes": list(self.notes),
        }


def prime_admissible(phi: TestFunction, D: SignedDecomposition, q: FLattice) -> bool:
    try:
        if q.contains_lattice(phi.period):
            return False
        return all(valuation(f, q) == 0 for B, _ in D.terms for f in B.elements)
    except InputError:
        return False


def auto_prime(phi: TestFunction, D: SignedDecomposition, k: int, minimum: int | None = None
               ) -> tuple[FLattice, int, int]:
    """Smallest admissible degree-one unramified prime p > n(k+1)+1; returns (q, p, root)."""
    from sympy import nextprime

    F = phi.field
    p = max(F.n * (k + 1) + 1, minimum or 0)
    for _ in range(10000):
        p = nextprime(p)
        if F.disc % p == 0:
            continue
        for c in degree_one_roots(F, p):
            q = prime_ideal(F, p, c)
            if prime_admissible(phi, D, q):
                return q, p, c
    raise BadPrime("no admissible prime found")


def _euler(chi_q, p: int, k: int, N: int) -> Cyclotomic:
    c = chi_q if isinstance(chi_q, Cyclotomic) else Cyclotomic.from_rational(N, Fraction(chi_q))
    return Cyclotomic.one(c.N) - c * (p ** (1 + k))


def _numeric_nabla(g: GenFun, k: int, dps: int = 40):
    """Numeric nabla^k at two working precisions; the discrepancy serves as the radius."""
    a = nabla_k_at_zero(g, k, "numeric", dps)
    b = nabla_k_at_zero(g, k, "numeric", dps + 20)
    with mpmath.workdps(dps + 20):
        rad = 4 * abs(a - b) + abs(mpmath.im(b)) + mpmath.mpf(10) ** (-dps)
        return mpmath.re(b), rad


def reconstruct_rational(x, rad, bound: int) -> Fraction:
    """The unique fraction with denominator <= bound near x, accepted only when rad < 1/(2 bound^2)."""
    if not rad < mpmath.mpf(1) / (2 * bound * bound):
        raise PrecisionExhausted(f"radius {mpmath.nstr(rad, 3)} too large for denominator bound {bound}")
    with mpmath.workdps(60):
        approx = Fraction(str(mpmath.nstr(x, 50)))
    r = approx.limit_denominator(bound)
    if abs(mpmath.mpf(r.numerator) / r.denominator - x) > rad + mpmath.mpf(1) / (2 * bound * bound):
        raise PrecisionExhausted("no fraction with the given denominator bound is close enough")
    return r


def l_special_exact(phi: TestFunction, k: int, D: SignedDecomposition, U: UnitSystem, q: FLattice,
                    chi_q=None, mode: str = "exact", denominator_bound: int | None = None) -> SpecialValue:
    """(1 - chi(q) Nq^{1+k}) L(phi, psi, -k) = 2^n/[U_F:V] * nabla^k F(phi_q, D, 0).

    ``mode="numeric"`` works for any n; with ``denominator_bound`` the value is
    recognised as a rational number under the certified-gap rule.
    """
    n = phi.field.n
    if k < 0:
        raise InputError("k must be non-negative")
    if I_k(phi.psi, k):
        raise NonEmptyIk(f"I_k = {I_k(phi.psi, k)} is not empty")
    if k == 0 and not phi.at_zero().is_zero():
        raise NonApplicable("k = 0 with phi(0) != 0: use order_zero_at_origin")
    p = ideal_norm(q)
    if phi.is_zero():
        z = Cyclotomic.zero(phi.N)
        return SpecialValue(k, z, None, z, 0, mode, p, n)
    g = genfun_smoothed(phi, D, q)
    notes = []
    if mode == "numeric":
        value, rad = _numeric_nabla(g, k)
        value = value * Fraction(2**n, U.index)
        rad = rad * Fraction(2**n, U.index)
        notes.append(f"numeric radius {mpmath.nstr(rad, 3)}")
        if denominator_bound:
            r = reconstruct_rational(value, rad, denominator_bound)
            value = Cyclotomic.from_rational(1, r)
            mode = "reconstructed"
    else:
        value = nabla_k_at_zero(g, k, mode) * Fraction(2**n, U.index)
    ef = div = None
    if chi_q is not None and isinstance(value, Cyclotomic):
        ef = _euler(chi_q, p, k, phi.N)
        if ef.is_zero():
            notes.append("euler factor vanishes; raw value only")
        else:
            M = math.lcm(value.N, ef.N)
            div = value.lift(M) / ef.lift(M)
    return SpecialValue(k, value, ef, div, 0, mode, p, n, notes)


# ---------------------------------------------------------------- Hecke L-functions

@dataclass
class HeckeClass:
    phi: TestFunction
    chi: object  # chi(a_i)
    norm: int


@dataclass
class HeckeSetup:
    field: NumberField
    classes: list
    psi: tuple
    q: FLattice
    chi_q: object

    @property
    def p(self) -> int:
        return ideal_norm(self.q)


def hecke_special(setup: HeckeSetup, k: int, D: SignedDecomposition, U: UnitSystem) -> SpecialValue:
    """(1 - chi(q) Nq^{1+k}) L(chi, -k) = 2^{n-1} sum_i chi(a_i) Na_i^k nabla^k F(phi_{chi,a_i,q}, D, 0)."""
    F = setup.field
    n = F.n
    if U.index != 2:
        raise NonApplicable("V must be free of index 2 in U_F")
    if I_k(setup.psi, k):
        raise NonEmptyIk(f"I_k = {I_k(setup.psi, k)} is not empty")
    if k == 0 and any(not c.phi.at_zero().is_zero() for c in setup.classes):
        raise NonApplicable("k = 0 with phi(0) != 0: use order_zero_at_origin")
    N = math.lcm(*[c.phi.N for c in setup.classes], *(
        [setup.chi_q.N] if isinstance(setup.chi_q, Cyclotomic) else []))
    p = setup.p
    total = Cyclotomic.zero(N)
    for cl in setup.classes:
        if tuple(cl.phi.psi) != tuple(setup.psi):
            raise InputError("class test functions disagree on psi")
        g = genfun_smoothed(cl.phi, D, setup.q)
        nab = nabla_k_at_zero(g, k, "exact")
        chi_a = cl.chi if isinstance(cl.chi, Cyclotomic) else Cyclotomic.from_rational(1, Fraction(cl.chi))
        M = math.lcm(N, nab.N, chi_a.N)
        total = total.lift(M) + nab.lift(M) * chi_a.lift(M) * (cl.norm**k)
        N = M
    value = total * 2 ** (n - 1)
    ef = _euler(setup.chi_q, p, k, N)
    notes = []
    div = None
    if ef.is_zero():
        notes.append("euler factor vanishes; raw value only")
    else:
        M = math.lcm(value.N, ef.N)
        div = value.lift(M) / ef.lift(M)
    return SpecialValue(k, value, ef, div, 0, "exact", p, n, notes)


def integrality_check(v: SpecialValue) -> bool:
    """value / 2^{n-1} has integral coordinates in the zeta-power basis."""
    if v.zero_order:
        raise NonApplicable("integrality applies to I_k = {} values only")
    if v.p <= 1 + v.n * (v.k + 1):
        raise NonApplicable(f"smoothing prime {v.p} must exceed 1 + n(k+1) = {1 + v.n * (v.k + 1)}")
    if not isinstance(v.value, Cyclotomic):
        raise NonApplicable("integrality needs an exact value")
    return (v.value * Fraction(1, 2 ** (v.n - 1))).is_integral()


# ---------------------------------------------------------------- s = 0

@dataclass
class OrderZeroReport:
    order: int
    leading: RealBall
    oracle: object = None
    difference: object = None

    def as_dict(self):
        d = {"order": self.order, "leading": str(self.leading)}
        if self.oracle is not None:
            d["oracle"] = mpmath.nstr(self.oracle, 15)
            d["difference"] = mpmath.nstr(self.difference, 3)
        return d


def order_zero_at_origin(phi: TestFunction, U: UnitSystem, prec: int = 128) -> OrderZeroReport:
    """lim_{s->0} s^{1-n} L(phi, 1, s) = -phi(0) Reg(U_F)."""
    if any(phi.psi):
        raise PsiNotTrivial("psi must be trivial")
    v0 = phi.at_zero()
    if v0.is_zero():
        raise PhiZeroAtOrigin("phi(0) = 0: the zero at s = 0 has order n")
    if not v0.is_rational():
        raise InputError("phi(0) must be rational")
    reg = regulator(U, prec)
    if not reg.totally_positive:
        raise InputError("V must be totally positive")
    lead = reg.reg_UF * (-v0.to_rational())
    return OrderZeroReport(phi.field.n - 1, lead)


# ---------------------------------------------------------------- quadrature paths

def _sign_patterns(n: int):
    for bits in range(2**n):
        yield tuple(-1 if bits >> i & 1 else 1 for i in range(n))


def _directions(g: GenFun, eps) -> list[tuple[float, float]]:
    out = []
    for grp in g.groups:
        for _, f in grp.denoms:
            e = [float(b.mid) for b in f.embeddings(64)]
            out.append((e[0] * eps[0], e[1] * eps[1]))
    return out


def symmetrised(ev: FastEvaluator, weights: dict):
    """H(y) = sum_eps w(eps) F(eps y) for y in the positive orthant."""

    def H(Y):
        tot = 0.0
        for eps, w in weights.items():
            if w:
                tot = tot + w * ev(Y * np.array(eps, dtype=float))
        return tot

    return H


def _psi_sign(psi, eps) -> int:
    s = 1
    for a, e in zip(psi, eps):
        if a % 2 and e < 0:
            s = -s
    return s


@dataclass
class MellinReport:
    s: float
    quadrature: float
    oracle: float | None
    difference: float | None
    tol: float

    @property
    def ok(self) -> bool:
        return self.difference is not None and self.difference < self.tol

    def as_dict(self):
        return {"s": self.s, "quadrature": self.quadrature, "oracle": self.oracle,
                "difference": self.difference, "ok": self.ok}


def mellin_value(phi: TestFunction, D: SignedDecomposition, U: UnitSystem, q: FLattice, s: float) -> float:
    """(1/[U_F:V]) Gamma(s)^{-n} int_{R^n} F(phi_q, D, y) psi(y) eps(N y) |N y|^{s-1} dy."""
    from scipy.special import gamma

    n = phi.field.n
    if not 0 < s < 1 / n:
        raise InputError("s must lie in (0, 1/n)")
    if phi.is_zero():
        return 0.0
    g = genfun_smoothed(phi, D, q)
    ev = FastEvaluator(g)
    weights = {eps: _psi_sign(phi.psi, eps) * math.prod(eps) for eps in _sign_patterns(n)}
    H = symmetrised(ev, weights)
    if n == 1:
        val = half_line_integral(lambda y: H(y[:, None]), s, -60.0 / s * 0.25, 6.0)
    elif n == 2:
        dirs = []
        for eps in weights:
            dirs.extend(_directions(g, eps))
        val = quadrant_integral(H, s, strip_angles(dirs), -10.0 / s, 22.0, panel=1.0)
    else:
        raise NonApplicable("quadrature is implemented for n <= 2")
    return val / (U.index * gamma(s) ** n)


def mellin_integral_check(phi: TestFunction, D: SignedDecomposition, U: UnitSystem, q: FLattice,
                          s: float, oracle: float | None, tol: float = 1e-3) -> MellinReport:
    val = mellin_value(phi, D, U, q, s)
    diff = None if oracle is None else abs(val - float(oracle))
    return MellinReport(s, val, None if oracle is None else float(oracle), diff, tol)


def _nabla_numeric(ev: FastEvaluator, k: int, n: int, h: float = 1e-3):
    """Central finite-difference approximation of (prod_i -d/dy_i)^k on an evaluator."""
    if k == 0:
        return ev
    from itertools import product

    stencil = [(j, (-1) ** j * math.comb(k, j)) for j in range(k + 1)]

    def G(Y):
        tot = 0.0
        for combo in product(stencil, repeat=n):
            shift = np.array([(k / 2 - j) * h for j, _ in combo])
            w = math.prod(c for _, c in combo)
            tot = tot + w * ev(Y + shift)
        return tot * (-1) ** (n * k) / h ** (n * k)

    return G


def leading_coefficient_numeric(phi: TestFunction, k: int, D: SignedDecomposition, U: UnitSystem,
                                q: FLattice) -> float:
    """2^{n-|I_k|}/[U_F:V] * int_{R^{I_k}} nabla^k F(phi_q, D, y) prod_{i in I_k} dy_i/y_i."""
    F = phi.field
    n = F.n
    I = I_k(phi.psi, k)
    if n > 2:
        raise NonApplicable("quadrature is implemented for n <= 2")
    if k == 0 and not phi.at_zero().is_zero():
        raise NonApplicable("k = 0 with phi(0) != 0: use order_zero_at_origin")
    if phi.is_zero():
        return 0.0
    g = genfun_smoothed(phi, D, q)
    ev = FastEvaluator(g)
    G = _nabla_numeric(ev, k, n)
    factor = 2 ** (n - len(I)) / U.index
    if not I:
        return float(mpmath.re(nabla_k_at_zero(g, k, "numeric"))) * factor
    if len(I) == 1:
        i = I[0]

        def odd(y):
            Y = np.zeros((len(y), n))
            Y[:, i] = y
            Ym = Y.copy()
            Ym[:, i] = -y
            return G(Y) - G(Ym)

        val = half_line_integral(odd, 0.0, -25.0, 6.0)
    else:
        weights = {eps: math.prod(eps) for eps in _sign_patterns(2)}
        H = symmetrised(G, weights)
        dirs = []
        for eps in weights:
            dirs.extend(_directions(g, eps))
        val = quadrant_integral(H, 0.0, strip_angles(dirs), -8.0, 22.0, panel=1.0)
    if not math.isfinite(val):
        raise QuadratureNotConverged("quadrature produced a non-finite value")
    return val * factor
