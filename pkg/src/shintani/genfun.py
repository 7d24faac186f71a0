"""Generating functions F(phi, D, y) of locally constant test functions.

For a cone basis B and a positive integer a with a*f_i in the period
lattice of phi, the series sum_alpha phi(alpha) chi_B(alpha, y) q^alpha
collapses to a finite sum over the half-open box {sum x_i a f_i, x_i in [0,1)}
with denominators prod (1 - q^{a f_i}), q^alpha = exp(-Tr(alpha y)).
Smoothing at a degree-one prime replaces the denominators by
1 - zeta q^{a f_i} with zeta a nontrivial p-th root of unity, which makes
the function smooth at y = 0 and lets us read off derivatives exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

import mpmath

from .cones import ConeBasis, SignedDecomposition, chi_decomp, face_inclusion
from .errors import (
    BadPrime,
    GaloisInstability,
    InputError,
    NotFullRank,
    NotRegular,
    NotSmooth,
    PoleOnBall,
    WrongMode,
)
from .field import FieldElement, FLattice, NumberField, UnitSystem, coset_reps, dual_lattice
from .kernel.ball import RealBall
from .kernel.cyclotomic import Cyclotomic
from .kernel.linalg import solve, to_fraction
from .kernel.series import TruncSeries, compose_linear, univariate_inverse


def _cyc(x, N: int) -> Cyclotomic:
    if isinstance(x, Cyclotomic):
        return x if x.N == N else x.lift(N)
    return Cyclotomic.from_rational(N, to_fraction(x))


# ---------------------------------------------------------------- test functions

class TestFunction:
    """phi: F -> Q(zeta_N), supported on ``support``, constant modulo ``period``.

    ``psi`` is the sign vector (a_1, ..., a_n) of the character
    prod_i sign(tau_i)^{a_i} under which phi is meant to be equivariant.
    """

    __test__ = False  # not a pytest class

    def __init__(self, field: NumberField, support: FLattice, period: FLattice,
                 values: dict, psi: Sequence[int] | None = None, N: int = 1):
        if not support.contains_lattice(period):
            raise InputError("period lattice must lie inside the support lattice")
        self.field = field
        self.support = support
        self.period = period
        self.N = N
        self.psi = tuple(int(a) % 2 for a in (psi or (0,) * field.n))
        if len(self.psi) != field.n:
            raise InputError("psi needs one sign bit per embedding")
        self.values = {self.reduce(k): _cyc(v, N) for k, v in values.items()}

    # construction
    @classmethod
    def from_callable(cls, field, support, period, fn: Callable, psi=None, N: int = 1) -> "TestFunction":
        return cls(field, support, period, {r: fn(r) for r in coset_reps(support, period)}, psi, N)

    @classmethod
    def indicator(cls, field: NumberField, lattice: FLattice, psi=None, N: int = 1) -> "TestFunction":
        return cls(field, lattice, lattice, {field.zero: 1}, psi, N)

    def reduce(self, alpha) -> FieldElement:
        """Canonical representative of alpha modulo the period lattice."""
        alpha = self.field(alpha)
        c = self.period.coords(alpha)
        frac = [x - math.floor(x) for x in c]
        return sum((b * x for b, x in zip(self.period.basis, frac)), self.field.zero)

    def __call__(self, alpha) -> Cyclotomic:
        alpha = self.field(alpha)
        if not self.support.contains(alpha):
            return Cyclotomic.zero(self.N)
        return self.values.get(self.reduce(alpha), Cyclotomic.zero(self.N))

    def at_zero(self) -> Cyclotomic:
        return self(self.field.zero)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values.values())

    def psi_of(self, u: FieldElement) -> int:
        s = 1
        for j, a in enumerate(self.psi):
            if a:
                s *= u.sign_at(j)
        return s

    def check_equivariance(self, units: Iterable[FieldElement]) -> bool:
        """phi(u alpha) = psi(u) phi(alpha) for the given unit generators and all coset reps."""
        reps = coset_reps(self.support, self.period)
        for u in units:
            su = self.psi_of(u)
            for r in reps:
                if self(u * r) != self(r) * su:
                    return False
        return True

    def __add__(self, other: "TestFunction") -> "TestFunction":
        return _combine(self, other, 1)

    def __sub__(self, other: "TestFunction") -> "TestFunction":
        return _combine(self, other, -1)

    def scaled(self, c) -> "TestFunction":
        return TestFunction(self.field, self.support, self.period,
                            {k: v * to_fraction(c) for k, v in self.values.items()}, self.psi, self.N)

    def __repr__(self):
        return f"TestFunction(support={self.support}, period={self.period}, {len(self.values)} values)"


def _combine(a: TestFunction, b: TestFunction, sign: int) -> TestFunction:
    if a.psi != b.psi:
        raise InputError("cannot combine test functions with different psi")
    F = a.field
    N = math.lcm(a.N, b.N)
    sup = a.support + b.support
    per = _intersect(a.period, b.period)
    vals = {}
    for r in coset_reps(sup, per):
        vals[r] = _cyc(a(r), N) + _cyc(b(r), N) * sign
    return TestFunction(F, sup, per, vals, a.psi, N)


def _intersect(L1: FLattice, L2: FLattice) -> FLattice:
    """A common sublattice: d*L1 inside L2 for d the index denominator, intersected via products."""
    if L1.contains_lattice(L2):
        return L2
    if L2.contains_lattice(L1):
        return L1
    # exponent of (L1 + L2)/L2 kills L1 into L2
    d = 1
    for b in L1.basis:
        c = L2.coords(b)
        for x in c:
            d = math.lcm(d, x.denominator)
    return FLattice(L1.F, [b * d for b in L1.basis])


def maximal_order(F: NumberField) -> FLattice:
    return F.maximal_order_guess


def ideal_norm(q: FLattice) -> int:
    return q.index_in(maximal_order(q.F))


def valuation(f: FieldElement, q: FLattice) -> int:
    """v_q(f) for a degree-one prime q above an unramified p."""
    if f.is_zero():
        raise InputError("valuation of zero")
    F = f.F
    O = maximal_order(F)
    p = ideal_norm(q)
    d = 1
    for x in O.coords(f):
        d = math.lcm(d, x.denominator)
    g = f * d
    m = 0
    power = q
    while power.contains(g):
        m += 1
        power = power * q
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    return m - e


def smooth_phi(phi: TestFunction, q: FLattice) -> TestFunction:
    """phi_q(alpha) = (1 - Nq * 1_{bq}(alpha)) phi(alpha)."""
    _check_prime(phi, q)
    p = ideal_norm(q)
    bq = phi.support * q
    per = phi.period * q
    vals = {}
    for r in coset_reps(phi.support, per):
        w = 1 - p if bq.contains(r) else 1
        vals[r] = phi(r) * w
    return TestFunction(phi.field, phi.support, per, vals, phi.psi, phi.N)


def _check_prime(phi: TestFunction, q: FLattice) -> int:
    from sympy import isprime

    p = ideal_norm(q)
    if not isprime(p):
        raise BadPrime(f"q has norm {p}, not a prime of degree one")
    if phi.field.disc % p == 0:
        raise BadPrime(f"{p} ramifies")
    O = maximal_order(phi.field)
    if not O.contains_lattice(q):
        raise BadPrime("q is not an integral ideal")
    if q.contains_lattice(phi.period):
        raise BadPrime("the period lattice lies inside q")
    return p


# ---------------------------------------------------------------- generating functions

@dataclass(frozen=True)
class Group:
    """sum_j coef_j q^{alpha_j} / prod_i (1 - zeta_i q^{g_i}); box coordinates of alpha_j in the g_i."""

    denoms: tuple  # ((zeta: Cyclotomic, g: FieldElement), ...)
    nums: tuple  # ((coef: Cyclotomic, alpha: FieldElement, xs: tuple[Fraction]), ...)


@dataclass(frozen=True)
class GenFun:
    field: NumberField
    N: int
    groups: tuple

    @property
    def regular(self) -> bool:
        return all(z != 1 for g in self.groups for z, _ in g.denoms)

    @property
    def terms(self) -> list:
        return [(c, a, g.denoms) for g in self.groups for c, a, _ in g.nums]

    def is_empty(self) -> bool:
        return not self.groups

    def to_records(self) -> list[dict]:
        out = []
        for g in self.groups:
            for c, a, _ in g.nums:
                out.append({
                    "coefficient": c.to_record(),
                    "alpha": a.to_record(),
                    "denominators": [{"zeta": z.to_record(), "f": f.to_record()} for z, f in g.denoms],
                })
        return out


def period_multiplier(B: ConeBasis, period: FLattice) -> int:
    a = 1
    for f in B.elements:
        for x in period.coords(f):
            a = math.lcm(a, x.denominator)
    return a


def lattice_points_in_box(a: int, B: ConeBasis, b: FLattice, closed: Sequence[bool] | None = None
                          ) -> list[tuple[FieldElement, tuple]]:
    """All alpha in b with alpha = sum x_i a f_i, with their coordinates x.

    x_i runs over [0, 1) when ``closed[i]`` (the default) and over (0, 1] otherwise,
    matching a half-open cone that keeps or drops the face x_i = 0.
    """
    F = b.F
    gens = [f * a for f in B.elements]
    M = [[c for c in g.c] for g in gens]
    from .kernel.linalg import rank

    if rank(M) < F.n:
        raise NotFullRank("box generators are linearly dependent")
    L = FLattice(F, gens)
    reps = coset_reps(b, L)
    cols = [[gens[i].c[j] for i in range(F.n)] for j in range(F.n)]
    out = []
    for r in reps:
        x = solve(cols, list(r.c))
        x = tuple(t - math.floor(t) for t in x)
        if closed is not None:
            x = tuple(t if c or t else Fraction(1) for t, c in zip(x, closed))
        alpha = sum((g * t for g, t in zip(gens, x)), F.zero)
        out.append((alpha, x))
    out.sort(key=lambda t: t[1])
    return out


def genfun_raw(phi: TestFunction, D: SignedDecomposition) -> GenFun:
    F = phi.field
    groups = []
    for B, nB in D.terms:
        a = period_multiplier(B, phi.period)
        sgn = nB * B.det_sign()
        nums = []
        for alpha, xs in lattice_points_in_box(a, B, phi.support, face_inclusion(B)):
            v = phi(alpha)
            if not v.is_zero():
                nums.append((v * sgn, alpha, xs))
        if nums:
            one = Cyclotomic.one(phi.N)
            groups.append(Group(tuple((one, f * a) for f in B.elements), tuple(nums)))
    return GenFun(F, phi.N, tuple(groups))


def _trace_exponent(beta: FieldElement, x: FieldElement, p: int) -> int:
    t = (beta * x).trace() * p
    if t.denominator != 1:
        raise BadPrime(f"p*Tr({beta} * {x}) = {t} is not an integer")
    return int(t) % p


def smoothing_characters(phi: TestFunction, q: FLattice) -> list[FieldElement]:
    """Nonzero coset representatives of (b q)^dual / b^dual."""
    bq = phi.support * q
    reps = coset_reps(dual_lattice(bq), dual_lattice(phi.support))
    return [r for r in reps if not r.is_zero()]


def genfun_smoothed(phi: TestFunction, D: SignedDecomposition, q: FLattice) -> GenFun:
    """F(phi_q, D, y) as a regular combination of 1 / prod (1 - zeta q^{a f_i})."""
    p = _check_prime(phi, q)
    F = phi.field
    for B, _ in D.terms:
        for f in B.elements:
            if valuation(f, q) != 0:
                raise BadPrime(f"v_q({f}) != 0")
    betas = smoothing_characters(phi, q)
    if len(betas) != p - 1:
        raise BadPrime(f"expected {p - 1} characters, found {len(betas)}")
    M = math.lcm(phi.N, p)
    groups = []
    for B, nB in D.terms:
        a = period_multiplier(B, phi.period)
        sgn = -nB * B.det_sign()
        box = [(alpha, xs, _cyc(phi(alpha), M)) for alpha, xs in lattice_points_in_box(a, B, phi.support, face_inclusion(B))]
        box = [t for t in box if not t[2].is_zero()]
        if not box:
            continue
        gens = [f * a for f in B.elements]
        for beta in betas:
            denoms = []
            for g in gens:
                e = _trace_exponent(beta, g, p)
                if e == 0:
                    raise NotSmooth(f"zeta^(beta a f) = 1 for f = {g}")
                denoms.append((Cyclotomic.zeta(M, e * (M // p)), g))
            nums = []
            for alpha, xs, v in box:
                e = _trace_exponent(beta, alpha, p)
                nums.append((v * Cyclotomic.zeta(M, e * (M // p)) * sgn, alpha, xs))
            groups.append(Group(tuple(denoms), tuple(nums)))
    return GenFun(F, M, tuple(groups))


# ---------------------------------------------------------------- exact Taylor coefficients

class QuadRing:
    """u + v*theta with u, v in Q(zeta_N), theta a root of the quadratic min-poly."""

    __slots__ = ("u", "v", "c0", "c1")

    def __init__(self, u: Cyclotomic, v: Cyclotomic, c0: int, c1: int):
        self.u, self.v, self.c0, self.c1 = u, v, c0, c1

    @classmethod
    def scalar(cls, u: Cyclotomic, F: NumberField) -> "QuadRing":
        return cls(u, u * 0, F.poly[0], F.poly[1])

    @classmethod
    def from_field(cls, x: FieldElement, N: int) -> "QuadRing":
        F = x.F
        return cls(Cyclotomic.from_rational(N, x.c[0]), Cyclotomic.from_rational(N, x.c[1]), F.poly[0], F.poly[1])

    def _wrap(self, u, v):
        return QuadRing(u, v, self.c0, self.c1)

    def __add__(self, o):
        if not isinstance(o, QuadRing):
            return self._wrap(self.u + o, self.v)
        return self._wrap(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self.u, -self.v)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, QuadRing):
            return self._wrap(self.u * o, self.v * o)
        # theta^2 = -c0 - c1 theta
        vv = self.v * o.v
        return self._wrap(self.u * o.u - vv * self.c0, self.u * o.v + self.v * o.u - vv * self.c1)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, QuadRing) and self.u == o.u and self.v == o.v

    def __repr__(self):
        return f"QuadRing({self.u} + ({self.v})*t)"


def _univariate(zeta, order: int, one, invert) -> list:
    """Coefficients of 1 / (1 - zeta e^{-t}) in t."""
    coeffs = [one - zeta]
    for m in range(1, order + 1):
        c = Fraction((-1) ** (m + 1), math.factorial(m))
        coeffs.append(zeta * c)
    return univariate_inverse(coeffs, order, invert)


@lru_cache(maxsize=4096)
def _univariate_exact(N: int, zeta: Cyclotomic, order: int) -> tuple:
    one = Cyclotomic.one(N)
    return tuple(_univariate(zeta, order, one, lambda c: c.inverse()))


class _ExactScalars:
    def __init__(self, F: NumberField, N: int):
        self.F, self.N, self.n = F, N, F.n

    def zero(self):
        z = Cyclotomic.zero(self.N)
        return QuadRing.scalar(z, self.F) if self.n == 2 else z

    def lift(self, c: Cyclotomic):
        return QuadRing.scalar(c, self.F) if self.n == 2 else c

    def embeddings(self, x: FieldElement) -> list:
        if self.n == 1:
            return [Cyclotomic.from_rational(self.N, x.c[0])]
        return [QuadRing.from_field(x, self.N), QuadRing.from_field(x.conjugate(), self.N)]

    def monomial(self, x: FieldElement, e: tuple) -> object:
        """prod_j (-tau_j x)^{e_j} / e_j! as a field element, then lifted."""
        if self.n == 1:
            r = x.c[0]
            return Cyclotomic.from_rational(self.N, (-r) ** e[0] / math.factorial(e[0]))
        y = x.F.one
        xc = x.conjugate()
        for _ in range(e[0]):
            y = y * (-x)
        for _ in range(e[1]):
            y = y * (-xc)
        y = y / (math.factorial(e[0]) * math.factorial(e[1]))
        return QuadRing.from_field(y, self.N)

    def times(self, c: Cyclotomic, m):
        return m * c if self.n == 2 else m * c

    def univariate(self, zeta: Cyclotomic, order: int) -> list:
        return [self.lift(c) for c in _univariate_exact(zeta.N, zeta, order)]


class _NumericScalars:
    def __init__(self, F: NumberField, N: int, dps: int = 40):
        self.F, self.N, self.n, self.dps = F, N, F.n, dps
        self.prec = int(dps * 3.33) + 16

    def zero(self):
        return mpmath.mpc(0)

    def lift(self, c: Cyclotomic):
        return c.to_mpc(self.prec)

    def embeddings(self, x: FieldElement) -> list:
        return [mpmath.mpf(b.mid) for b in x.embeddings(self.prec)]

    def monomial(self, x: FieldElement, e: tuple):
        em = self.embeddings(x)
        out = mpmath.mpf(1)
        for t, k in zip(em, e):
            out *= (-t) ** k / math.factorial(k)
        return out

    def times(self, c: Cyclotomic, m):
        return m * c.to_mpc(self.prec)

    def univariate(self, zeta: Cyclotomic, order: int) -> list:
        z = zeta.to_mpc(self.prec)
        return _univariate(z, order, mpmath.mpc(1), lambda c: 1 / c)


def taylor_at_zero(g: GenFun, order: int, mode: str = "exact", box: Sequence[int] | None = None,
                   dps: int = 40) -> TruncSeries:
    """Taylor series of a regular generating function at y = 0 up to total degree ``order``."""
    if not g.regular:
        raise NotRegular("a denominator has zeta = 1; smooth first")
    F = g.field
    n = F.n
    if mode in ("exact", "exact2"):
        if n > 2:
            raise WrongMode("exact Taylor extraction supports n <= 2; use numeric mode")
        S = _ExactScalars(F, g.N)
    elif mode == "numeric":
        S = _NumericScalars(F, g.N, dps)
    else:
        raise WrongMode(f"unknown mode {mode!r}")
    with mpmath.workprec(getattr(S, "prec", 53)):
        return _taylor(g, order, S, box)


def _taylor(g: GenFun, order: int, S, box) -> TruncSeries:
    n = g.field.n
    zero = S.zero()
    total = TruncSeries(n, order, {}, zero, box)
    bx = tuple(box) if box is not None else (order,) * n
    mons = [e for e in product(*[range(b + 1) for b in bx]) if sum(e) <= order]
    for grp in g.groups:
        num = {}
        for e in mons:
            acc = None
            for c, alpha, _ in grp.nums:
                t = S.times(c, S.monomial(alpha, e))
                acc = t if acc is None else acc + t
            num[e] = acc
        series = TruncSeries(n, order, num, zero, box)
        for zeta, f in grp.denoms:
            uni = S.univariate(zeta, order)
            series = series * compose_linear(uni, S.embeddings(f), n, order, zero, box)
        total = total + series
    return total


def _theta_free(x, F: NumberField) -> Cyclotomic:
    if isinstance(x, QuadRing):
        if not x.v.is_zero():
            raise GaloisInstability(f"theta-component {x.v} does not vanish")
        return x.u
    return x


def nabla_k_at_zero(g: GenFun, k: int, mode: str = "exact", dps: int = 40):
    """(prod_i -d/dy_i)^k g at y = 0."""
    n = g.field.n
    if g.is_empty():
        return Cyclotomic.zero(g.N) if mode != "numeric" else mpmath.mpc(0)
    s = taylor_at_zero(g, n * k, mode, box=(k,) * n, dps=dps)
    c = s[(k,) * n]
    factor = (-1) ** (n * k) * math.factorial(k) ** n
    if mode == "numeric":
        return c * factor
    return _theta_free(c, g.field) * factor


# ---------------------------------------------------------------- numeric evaluation

def _term_value(zeta, t, x):
    """e^{-x t} / (1 - zeta e^{-t}), rewritten for t < 0 to avoid overflow."""
    if t >= 0:
        return mpmath.exp(-x * t) / (1 - zeta * mpmath.exp(-t))
    return mpmath.exp((1 - x) * t) / (mpmath.exp(t) - zeta)


def _mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


def _eval_mp(g: GenFun, y: Sequence, prec: int):
    with mpmath.workprec(prec):
        yv = [c.mid if isinstance(c, RealBall) else _mp(c) for c in y]
        tot = mpmath.mpc(0)
        for grp in g.groups:
            ts = []
            zs = []
            for zeta, f in grp.denoms:
                em = [mpmath.mpf(b.mid) for b in f.embeddings(prec + 20)]
                t = mpmath.fsum(a * b for a, b in zip(em, yv))
                z = zeta.to_mpc(prec)
                if t == 0 and z == 1:
                    raise PoleOnBall("denominator vanishes at y")
                ts.append(t)
                zs.append(z)
            for c, _alpha, xs in grp.nums:
                term = c.to_mpc(prec)
                for z, t, x in zip(zs, ts, xs):
                    term *= _term_value(z, t, mpmath.mpf(x.numerator) / x.denominator)
                tot += term
        return tot


def genfun_eval(g: GenFun, y: Sequence, prec: int = 128) -> RealBall:
    """Value of g at real y with an error estimate from two working precisions.

    The radius is four times the discrepancy between evaluations at ``prec``
    and ``prec + 64`` bits plus the imaginary residue; this is an estimate,
    not an interval enclosure.
    """
    v1 = _eval_mp(g, y, prec)
    v2 = _eval_mp(g, y, prec + 64)
    with mpmath.workprec(prec + 64):
        rad = 4 * abs(v1 - v2) + abs(mpmath.im(v2)) + abs(mpmath.re(v2)) * mpmath.mpf(2) ** (-prec)
        return RealBall.mid_rad(mpmath.re(v2), rad, prec)


class FastEvaluator:
    """Vectorised double-precision evaluation of a generating function (for quadrature)."""

    def __init__(self, g: GenFun):
        import numpy as np

        self.np = np
        self.n = g.field.n
        self.groups = []
        for grp in g.groups:
            fs = np.array([[float(b.mid) for b in f.embeddings(64)] for _, f in grp.denoms])
            zs = np.array([complex(z) for z, _ in grp.denoms])
            cs = np.array([complex(c) for c, _, _ in grp.nums])
            xs = np.array([[float(x) for x in xs] for _, _, xs in grp.nums])
            self.groups.append((fs, zs, cs, xs))

    def __call__(self, Y):
        np = self.np
        Y = np.atleast_2d(np.asarray(Y, dtype=float))
        out = np.zeros(Y.shape[0], dtype=complex)
        for fs, zs, cs, xs in self.groups:
            T = Y @ fs.T  # (m, r)
            pos = T >= 0
            with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
                den_pos = 1 - zs[None, :] * np.exp(-np.where(pos, T, 0.0))
                den_neg = np.exp(np.where(pos, 0.0, T)) - zs[None, :]
                for c, x in zip(cs, xs):
                    num = np.where(pos, np.exp(-x[None, :] * np.where(pos, T, 0.0)),
                                   np.exp((1 - x[None, :]) * np.where(pos, 0.0, T)))
                    val = num / np.where(pos, den_pos, den_neg)
                    out += c * np.prod(val, axis=1)
        return out.real


# ---------------------------------------------------------------- direct sums and the fundamental identity

def lattice_points(b: FLattice, cutoff: float) -> list[FieldElement]:
    """All beta in b with max_j |tau_j(beta)| <= cutoff."""
    F = b.F
    n = F.n
    E = [[float(x.mid) for x in v.embeddings(64)] for v in b.basis]  # rows: basis vectors
    import numpy as np

    Em = np.array(E).T  # columns: basis vectors
    Einv = np.linalg.inv(Em)
    bounds = [int(math.floor(cutoff * sum(abs(Einv[i][j]) for j in range(n)))) + 1 for i in range(n)]
    out = []
    for ms in product(*[range(-B, B + 1) for B in bounds]):
        v = Em @ np.array(ms, dtype=float)
        if np.max(np.abs(v)) <= cutoff + 1e-12:
            out.append(sum((bv * m for bv, m in zip(b.basis, ms)), F.zero))
    return out


def direct_sum(phi: TestFunction, D: SignedDecomposition, y: Sequence, cutoff: float, dps: int = 30):
    """sum over alpha in b, |alpha| <= cutoff, of phi(alpha) chi_D(alpha, y) q^alpha."""
    with mpmath.workdps(dps):
        tot = mpmath.mpc(0)
        yq = [to_fraction(c) for c in y]
        for alpha in lattice_points(phi.support, cutoff):
            v = phi(alpha)
            if v.is_zero():
                continue
            chi = chi_decomp(D, alpha, yq)
            if chi:
                em = [mpmath.mpf(b.mid) for b in alpha.embeddings(128)]
                tr = mpmath.fsum(a * mpmath.mpf(yy.numerator) / yy.denominator for a, yy in zip(em, yq))
                tot += chi * v.to_mpc(128) * mpmath.exp(-tr)
        return tot


@dataclass
class FundamentalIdentityReport:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    difference: mpmath.mpf
    tol: float

    @property
    def ok(self) -> bool:
        return self.difference < self.tol

    def as_dict(self):
        return {"lhs": mpmath.nstr(self.lhs, 15), "rhs": mpmath.nstr(self.rhs, 15),
                "difference": mpmath.nstr(self.difference, 3), "ok": self.ok}


def fundamental_identity_check(phi: TestFunction, D: SignedDecomposition, U: UnitSystem, y: Sequence,
                               K: int = 8, cutoff: float = 30, tol: float = 1e-8, dps: int = 30
                               ) -> FundamentalIdentityReport:
    """sum_v psi(v) N(v) F*(phi, D, v y) against eps(N(y)) sum_{sign(beta)=sign(y)} phi(beta) e^{-Tr(beta y)}."""
    F = phi.field
    n = F.n
    yq = [to_fraction(c) for c in y]
    if any(c == 0 for c in yq):
        raise InputError("y must have nonzero coordinates")
    g = genfun_raw(phi, D)
    phi0 = phi.at_zero()
    prec = int(dps * 3.33) + 20
    zero_pt = [Fraction(0)] * n
    with mpmath.workdps(dps):
        lhs = mpmath.mpc(0)
        for ks, v in U.enumerate(K):
            ve = v.embeddings(prec)
            vy = [mpmath.mpf(b.mid) * mpmath.mpf(c.numerator) / c.denominator for b, c in zip(ve, yq)]
            val = _eval_mp(g, vy, prec)
            if not phi0.is_zero():
                if n <= 2:
                    pt = [v * yq[0]] if n == 1 else [v * yq[0], v.conjugate() * yq[1]]
                    if n == 1:
                        pt = [(v * yq[0]).rational()]
                    chi0 = chi_decomp(D, zero_pt, pt)
                else:
                    chi0 = chi_decomp(D, zero_pt, [b * c for b, c in zip(ve, yq)])
                val -= phi0.to_mpc(prec) * chi0
            w = phi.psi_of(v) * int(v.norm())
            lhs += w * val
        sy = [1 if c > 0 else -1 for c in yq]
        rhs = mpmath.mpc(0)
        for beta in lattice_points(phi.support, cutoff):
            if beta.is_zero():
                continue
            if [beta.sign_at(j) for j in range(n)] != sy:
                continue
            pv = phi(beta)
            if pv.is_zero():
                continue
            em = [mpmath.mpf(b.mid) for b in beta.embeddings(prec)]
            tr = mpmath.fsum(a * mpmath.mpf(c.numerator) / c.denominator for a, c in zip(em, yq))
            rhs += pv.to_mpc(prec) * mpmath.exp(-tr)
        rhs *= math.prod(sy)
        diff = abs(lhs - rhs)
        return FundamentalIdentityReport(mpmath.re(lhs), mpmath.re(rhs), diff, tol)
