"""Reference values computed without any cone machinery.

Bernoulli numbers and polynomials, generalised Bernoulli numbers of Dirichlet
characters, Hurwitz zeta by Euler-Maclaurin summation, and Dedekind zeta
values of real quadratic fields through zeta(s) L(s, chi_D) and through
Siegel's divisor-sum formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
from sympy import factorint, primitive_root

from .errors import InputError, NotFundamental
from .kernel.cyclotomic import Cyclotomic


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """B_k with B_1 = -1/2."""
    if k < 0:
        raise InputError("k must be non-negative")
    if k == 0:
        return Fraction(1)
    if k > 1 and k % 2:
        return Fraction(0)
    s = sum(math.comb(k + 1, j) * bernoulli(j) for j in range(k))
    return -s / (k + 1)


def bernoulli_poly(k: int, x) -> Fraction:
    x = Fraction(x)
    return sum(math.comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1))


def zeta_negative(k: int) -> Fraction:
    """zeta(-k) = -B_{k+1}(1) / (k+1)."""
    return -bernoulli_poly(k + 1, 1) / (k + 1)


# ---------------------------------------------------------------- Dirichlet characters

@dataclass(frozen=True)
class DirichletChar:
    """A Dirichlet character mod D with values in Q(zeta_N), stored on 0..D-1."""

    modulus: int
    table: tuple  # Cyclotomic values on residues 0..D-1
    N: int = 1

    def __call__(self, a: int) -> Cyclotomic:
        return self.table[a % self.modulus]

    @property
    def parity(self) -> int:
        v = self(-1)
        return 0 if v == 1 else 1

    def is_trivial(self) -> bool:
        return all(v == 1 or v.is_zero() for v in self.table)

    def check_multiplicative(self) -> bool:
        D = self.modulus
        for a in range(D):
            for b in range(D):
                if self(a * b) != self(a) * self(b):
                    return False
        return self(1) == 1

    @property
    def primitive(self) -> bool:
        D = self.modulus
        for d in range(1, D):
            if D % d:
                continue
            # induced from mod d iff constant on residues = 1 mod d that are units
            if all(self(a) == 1 for a in range(1, D) if a % d == 1 % d and math.gcd(a, D) == 1):
                return False
        return True

    def conductor_values(self) -> list:
        return list(self.table)


def trivial_character(N: int = 1) -> DirichletChar:
    return DirichletChar(1, (Cyclotomic.one(N),), N)


def kronecker(D: int, n: int) -> int:
    """Kronecker symbol (D/n)."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    s = 1
    if n < 0:
        n = -n
        if D < 0:
            s = -s
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            s = -s
    # Jacobi symbol (D / n) for odd n
    a = D % n if n > 1 else 0
    if n == 1:
        return s
    res = 1
    m = n
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                res = -res
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            res = -res
        a %= m
    return s * res if m == 1 else 0


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return all(e == 1 for p, e in factorint(abs(D)).items())
    if D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            return False
        return all(e == 1 for p, e in factorint(abs(m)).items())
    return False


def kronecker_character(D: int) -> DirichletChar:
    """chi_D(a) = (D / a) for a fundamental discriminant D."""
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    M = abs(D)
    return DirichletChar(M, tuple(Cyclotomic.from_rational(1, kronecker(D, a)) for a in range(M)), 1)


def characters_mod(D: int) -> list[DirichletChar]:
    """All characters mod D for D with a cyclic unit group (primes, 4, prime powers)."""
    g = primitive_root(D)
    if g is None:
        raise InputError(f"(Z/{D})^* is not cyclic")
    m = sum(1 for a in range(1, D) if math.gcd(a, D) == 1)
    logs = {}
    x = 1
    for e in range(m):
        logs[x] = e
        x = x * g % D
    if len(logs) != m:
        raise InputError(f"(Z/{D})^* is not cyclic")
    out = []
    for j in range(m):
        N = m // math.gcd(j, m) if j else 1
        N = max(N, 1)
        vals = []
        for a in range(D):
            if a in logs:
                vals.append(Cyclotomic.zeta(N, (j * logs[a] * N // m) % N) if N > 1 else Cyclotomic.one(1))
            else:
                vals.append(Cyclotomic.zero(N))
        if N == 2:  # keep quadratic characters rational
            vals = [Cyclotomic.from_rational(1, v.to_rational()) for v in vals]
            N = 1
        out.append(DirichletChar(D, tuple(vals), N))
    return out


def gen_bernoulli(chi: DirichletChar, k: int) -> Cyclotomic:
    """B_{k, chi} = D^{k-1} sum_{a=1}^{D} chi(a) B_k(a / D)."""
    D = chi.modulus
    tot = Cyclotomic.zero(chi.N)
    for a in range(1, D + 1):
        v = chi(a)
        if not v.is_zero():
            tot = tot + v * bernoulli_poly(k, Fraction(a, D))
    return tot * Fraction(D) ** (k - 1)


def dirichlet_l_negative(chi: DirichletChar, k: int) -> Cyclotomic:
    """L(chi, -k) = -B_{k+1, chi} / (k+1)."""
    return gen_bernoulli(chi, k + 1) * Fraction(-1, k + 1)


# ---------------------------------------------------------------- Dedekind zeta of real quadratic fields

def _sigma(m: int, r: int) -> int:
    return sum(d**r for d in range(1, m + 1) if m % d == 0)


_SIEGEL = {1: Fraction(1, 60), 3: Fraction(1, 120)}


def siegel_sum(D: int, k: int) -> Fraction:
    """zeta_F(-k) for F = Q(sqrt D), k in {1, 3}, from divisor sums over b^2 < D, b = D mod 2."""
    if not is_fundamental(D) or D < 0:
        raise NotFundamental(f"{D} is not a positive fundamental discriminant")
    if k not in _SIEGEL:
        raise InputError("the divisor-sum formula is implemented for k = 1 and k = 3")
    tot = 0
    b = D % 2
    bound = math.isqrt(D)
    for bb in range(-bound, bound + 1):
        if bb % 2 != b or bb * bb >= D:
            continue
        tot += _sigma((D - bb * bb) // 4, k)
    return _SIEGEL[k] * tot


def dedekind_zeta_negative(D: int, k: int) -> Fraction:
    """zeta_F(-k) = zeta(-k) L(chi_D, -k), k odd."""
    chi = kronecker_character(D)
    return zeta_negative(k) * dirichlet_l_negative(chi, k).to_rational()


def hurwitz_zeta(s, a, dps: int = 30, terms: int | None = None, order: int = 30):
    """zeta(s, a) for real s != 1, a > 0, by Euler-Maclaurin summation."""
    with mpmath.workdps(dps + 10):
        s = mpmath.mpf(s)
        a = mpmath.mpf(a)
        Nt = terms if terms is not None else max(20, dps)
        tot = mpmath.fsum((n + a) ** (-s) for n in range(Nt))
        x = Nt + a
        tot += x ** (1 - s) / (s - 1) + x ** (-s) / 2
        rising = s  # s (s+1) ... (s + 2j - 2)
        for j in range(1, order + 1):
            term = mpmath.mpf(bernoulli(2 * j).numerator) / bernoulli(2 * j).denominator
            term *= rising / mpmath.factorial(2 * j) * x ** (-s - 2 * j + 1)
            tot += term
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        return +tot


def riemann_zeta(s, dps: int = 30):
    return hurwitz_zeta(s, 1, dps)


def dirichlet_l(chi: DirichletChar, s, dps: int = 30):
    """L(s, chi) = D^{-s} sum_a chi(a) zeta(s, a/D)."""
    D = chi.modulus
    with mpmath.workdps(dps + 10):
        tot = mpmath.mpc(0)
        for a in range(1, D + 1):
            v = chi(a)
            if not v.is_zero():
                tot += v.to_mpc(int((dps + 10) * 3.4)) * hurwitz_zeta(s, mpmath.mpf(a) / D, dps)
        tot *= mpmath.mpf(D) ** (-mpmath.mpf(s))
        return tot.real if abs(tot.imag) < mpmath.mpf(10) ** (-dps) else tot


def dedekind_zeta_quadratic(D: int, s, dps: int = 30):
    """zeta_F(s) for real s; exact Fraction when s = -k with k odd positive."""
    if isinstance(s, int) and s < 0 and s % 2:
        return dedekind_zeta_negative(D, -s)
    chi = kronecker_character(D)
    return riemann_zeta(s, dps) * dirichlet_l(chi, s, dps)


def dedekind_zeta_derivative_at_zero(D: int, dps: int = 30):
    """zeta_F'(0) = zeta(0) L'(0, chi_D) with L'(0, chi_D) = sum_a chi_D(a) log Gamma(a/D)."""
    chi = kronecker_character(D)
    with mpmath.workdps(dps):
        lp = mpmath.fsum(int(chi(a).to_rational()) * mpmath.loggamma(mpmath.mpf(a) / D) for a in range(1, D))
        return -lp / 2

