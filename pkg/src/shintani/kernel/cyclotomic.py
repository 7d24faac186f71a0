"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored as an integer numerator vector in the power basis
1, z, ..., z^(phi(N)-1) reduced modulo the N-th cyclotomic polynomial,
together with one positive common denominator.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd

from ..errors import DivisionByZero, ModulusMismatch
from .linalg import solve


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    assert not any(a), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the N-th cyclotomic polynomial."""
    if N < 1:
        raise ValueError("modulus must be positive")
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def euler_phi(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


def _reduce(a: list[int], N: int) -> list[int]:
    phi = cyclotomic_polynomial(N)
    m = len(phi) - 1
    a = list(a)
    for i in range(len(a) - 1, m - 1, -1):
        c = a[i]
        if c:
            base = i - m
            for j in range(m):
                if phi[j]:
                    a[base + j] -= c * phi[j]
            a[i] = 0
    a = a[:m]
    return a + [0] * (m - len(a))


class Cyclotomic:
    """Element of Q(zeta_N); immutable, hashable, canonical."""

    __slots__ = ("N", "num", "den")

    def __init__(self, N: int, num, den: int = 1, _reduced: bool = False):
        if not _reduced:
            num = _reduce([int(x) for x in num], N)
        if den < 0:
            num = [-x for x in num]
            den = -den
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            num = [x // g for x in num]
            den //= g
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "num", tuple(num))
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("Cyclotomic is immutable")

    # constructors
    @classmethod
    def from_rational(cls, N: int, q) -> "Cyclotomic":
        q = Fraction(q)
        m = euler_phi(N)
        return cls(N, [q.numerator] + [0] * (m - 1), q.denominator, _reduced=True)

    @classmethod
    def zero(cls, N: int) -> "Cyclotomic":
        return cls.from_rational(N, 0)

    @classmethod
    def one(cls, N: int) -> "Cyclotomic":
        return cls.from_rational(N, 1)

    @classmethod
    def zeta(cls, N: int, j: int = 1) -> "Cyclotomic":
        """zeta_N^j with zeta_N = exp(2 pi i / N)."""
        return _zeta_power(N, j % N)

    @classmethod
    def from_coeffs(cls, N: int, coeffs) -> "Cyclotomic":
        fr = [Fraction(c) for c in coeffs]
        d = 1
        for c in fr:
            d = d * c.denominator // gcd(d, c.denominator)
        return cls(N, [int(c * d) for c in fr], d)

    # accessors
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.num[0], self.den)

    def is_integral(self) -> bool:
        """True iff every power-basis coefficient is an integer (membership in Z[zeta_N])."""
        return self.den == 1

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.N)
        return sum(c * z**j for j, c in enumerate(self.num)) / self.den

    def to_mpc(self, prec: int = 53):
        import mpmath

        with mpmath.workprec(prec):
            z = mpmath.expjpi(mpmath.mpf(2) / self.N)
            tot = mpmath.mpc(0)
            for j, c in enumerate(self.num):
                if c:
                    tot += c * z**j
            return tot / self.den

    # arithmetic
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.N != self.N:
                raise ModulusMismatch(f"Q(zeta_{self.N}) vs Q(zeta_{other.N})")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.N, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.den * o.den // gcd(self.den, o.den)
        a, b = d // self.den, d // o.den
        return Cyclotomic(self.N, [x * a + y * b for x, y in zip(self.num, o.num)], d, _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.N, [-x for x in self.num], self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.N, [x * q.numerator for x in self.num], self.den * q.denominator, _reduced=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.num, o.num
        if not any(a[1:]):
            return Cyclotomic(self.N, [a[0] * y for y in b], self.den * o.den, _reduced=True)
        if not any(b[1:]):
            return Cyclotomic(self.N, [b[0] * x for x in a], self.den * o.den, _reduced=True)
        prod = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(self.N, _reduce(prod, self.N), self.den * o.den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return Cyclotomic.from_rational(self.N, Fraction(self.den, self.num[0]))
        m = len(self.num)
        cols = []
        z = Cyclotomic.zeta(self.N, 1)
        cur = Cyclotomic(self.N, self.num, 1, _reduced=True)
        for _ in range(m):
            cols.append(cur.num)
            cur = cur * z
        A = [[cols[j][i] for j in range(m)] for i in range(m)]
        x = solve(A, [1] + [0] * (m - 1))
        return Cyclotomic.from_coeffs(self.N, x) * self.den

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = Cyclotomic.one(self.N)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def galois(self, a: int) -> "Cyclotomic":
        """Apply the automorphism zeta -> zeta^a (gcd(a, N) = 1)."""
        if gcd(a, self.N) != 1:
            raise ValueError("exponent must be a unit modulo N")
        tot = [0] * len(self.num)
        for j, c in enumerate(self.num):
            if c:
                zj = _zeta_power(self.N, (a * j) % self.N)
                for i, v in enumerate(zj.num):
                    tot[i] += c * v
        return Cyclotomic(self.N, tot, self.den, _reduced=True)

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1 % self.N if self.N > 1 else 1)

    def trace_to_q(self) -> Fraction:
        from math import gcd as _g

        tot = Cyclotomic.zero(self.N)
        for a in range(1, self.N + 1):
            if _g(a, self.N) == 1:
                tot = tot + self.galois(a)
        return tot.to_rational()

    def lift(self, M: int) -> "Cyclotomic":
        """Embed into Q(zeta_M) for N | M."""
        if M % self.N:
            raise ModulusMismatch(f"{self.N} does not divide {M}")
        s = M // self.N
        tot = Cyclotomic.zero(M)
        for j, c in enumerate(self.num):
            if c:
                tot = tot + Cyclotomic.zeta(M, s * j) * c
        return tot / self.den

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self.num[0], self.den) == other
        if isinstance(other, Cyclotomic):
            if self.N != other.N:
                M = self.N * other.N // gcd(self.N, other.N)
                return self.lift(M) == other.lift(M)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        # equal values may live in different Q(zeta_N); only rationals get a value hash
        if self.is_rational():
            return hash(Fraction(self.num[0], self.den))
        return hash("cyclotomic")

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclotomic({self.N}, {self})"

    def __str__(self):
        if self.is_rational():
            q = Fraction(self.num[0], self.den)
            return str(q)
        parts = []
        for j, c in enumerate(self.coeffs):
            if c:
                mon = "" if j == 0 else ("z" if j == 1 else f"z^{j}")
                if j and c == 1:
                    s = mon
                elif j and c == -1:
                    s = "-" + mon
                else:
                    s = str(c) + ("*" + mon if mon else "")
                parts.append(s)
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_record(self) -> dict:
        return {"N": self.N, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_record(cls, rec: dict) -> "Cyclotomic":
        return cls.from_coeffs(int(rec["N"]), [Fraction(c) for c in rec["coeffs"]])


@lru_cache(maxsize=4096)
def _zeta_power(N: int, j: int) -> Cyclotomic:
    a = [0] * (j + 1)
    a[j] = 1
    return Cyclotomic(N, a, 1)


def cyc_arith(a: Cyclotomic, b: Cyclotomic | None, op: str) -> Cyclotomic:
    """Dispatch add/mul/inv; kept for parity with the documented operation table."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")
