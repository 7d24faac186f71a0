"""Certified real intervals on top of mpmath's low-level binary floats.

Each ball stores a closed interval [lo, hi] with endpoints rounded outward,
at an explicit working precision; no global precision state is touched.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import libmp as L

from ..errors import DivisionByZero, PrecisionExhausted

DEFAULT_PREC = 128
MAX_DEPTH = 8

_F, _C = L.round_floor, L.round_ceiling


def _widen(lo, hi, prec):
    """Push endpoints out by a few ulps to absorb library rounding in transcendental calls."""
    eps = L.mpf_shift(L.fone, -prec + 2)
    lo = L.mpf_sub(lo, L.mpf_mul(L.mpf_abs(lo), eps, prec, _C), prec, _F)
    hi = L.mpf_add(hi, L.mpf_mul(L.mpf_abs(hi), eps, prec, _C), prec, _C)
    tiny = L.mpf_shift(L.fone, -4 * prec)
    return L.mpf_sub(lo, tiny, prec, _F), L.mpf_add(hi, tiny, prec, _C)


def _lowest(vals):
    out = vals[0]
    for v in vals[1:]:
        if L.mpf_lt(v, out):
            out = v
    return out


def _highest(vals):
    out = vals[0]
    for v in vals[1:]:
        if L.mpf_gt(v, out):
            out = v
    return out


class RealBall:
    """Closed real interval with outward rounding."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi=None, prec: int = DEFAULT_PREC):
        self.prec = prec
        if hi is None:
            hi = lo
        self.lo = lo
        self.hi = hi

    # constructors
    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "RealBall":
        if isinstance(x, RealBall):
            return x
        if isinstance(x, int):
            return cls(L.from_int(x, prec, _F), L.from_int(x, prec, _C), prec)
        q = Fraction(x)
        return cls(
            L.from_rational(q.numerator, q.denominator, prec, _F),
            L.from_rational(q.numerator, q.denominator, prec, _C),
            prec,
        )

    @classmethod
    def interval(cls, a, b, prec: int = DEFAULT_PREC) -> "RealBall":
        return cls(cls.exact(a, prec).lo, cls.exact(b, prec).hi, prec)

    @classmethod
    def mid_rad(cls, mid, rad, prec: int = DEFAULT_PREC) -> "RealBall":
        m, r = mpmath.mpf(mid)._mpf_, mpmath.mpf(abs(rad))._mpf_
        return cls(L.mpf_sub(m, r, prec, _F), L.mpf_add(m, r, prec, _C), prec)

    @classmethod
    def pi(cls, prec: int = DEFAULT_PREC) -> "RealBall":
        return cls(*_widen(L.mpf_pi(prec, _F), L.mpf_pi(prec, _C), prec), prec)

    # views
    @property
    def mid(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(L.mpf_shift(L.mpf_add(self.lo, self.hi, self.prec + 2, L.round_nearest), -1))

    @property
    def rad(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(L.mpf_shift(L.mpf_sub(self.hi, self.lo, self.prec, _C), -1))

    @property
    def lower(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.lo)

    @property
    def upper(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.hi)

    def contains_zero(self) -> bool:
        return L.mpf_sign(self.lo) <= 0 <= L.mpf_sign(self.hi)

    def contains(self, x) -> bool:
        x = RealBall.exact(x, self.prec + 64) if not isinstance(x, RealBall) else x
        return L.mpf_le(self.lo, x.lo) and L.mpf_ge(self.hi, x.hi)

    def overlaps(self, other: "RealBall") -> bool:
        return L.mpf_le(self.lo, other.hi) and L.mpf_le(other.lo, self.hi)

    def sign(self) -> int | None:
        """-1 or +1 when certified, None when the ball contains zero."""
        if L.mpf_sign(self.lo) > 0:
            return 1
        if L.mpf_sign(self.hi) < 0:
            return -1
        return None

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self):
        return f"RealBall({mpmath.nstr(self.mid, 20)} ± {mpmath.nstr(self.rad, 3)})"

    def __str__(self):
        return f"{mpmath.nstr(self.mid, 17)} ± {mpmath.nstr(self.rad, 3)}"

    # arithmetic
    def _c(self, other) -> "RealBall":
        if isinstance(other, RealBall):
            return other
        if isinstance(other, (int, Fraction)):
            return RealBall.exact(other, self.prec)
        return NotImplemented

    def _p(self, other):
        return max(self.prec, other.prec)

    def __add__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        p = self._p(o)
        return RealBall(L.mpf_add(self.lo, o.lo, p, _F), L.mpf_add(self.hi, o.hi, p, _C), p)

    __radd__ = __add__

    def __neg__(self):
        return RealBall(L.mpf_neg(self.hi), L.mpf_neg(self.lo), self.prec)

    def __sub__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        p = self._p(o)
        return RealBall(L.mpf_sub(self.lo, o.hi, p, _F), L.mpf_sub(self.hi, o.lo, p, _C), p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        p = self._p(o)
        cands = [(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        lo = _lowest([L.mpf_mul(a, b, p, _F) for a, b in cands])
        hi = _highest([L.mpf_mul(a, b, p, _C) for a, b in cands])
        return RealBall(lo, hi, p)

    __rmul__ = __mul__

    def inverse(self) -> "RealBall":
        if self.contains_zero():
            raise DivisionByZero("ball contains zero")
        p = self.prec
        return RealBall(L.mpf_div(L.fone, self.hi, p, _F), L.mpf_div(L.fone, self.lo, p, _C), p)

    def __truediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RealBall.exact(1, self.prec)
        for _ in range(e):
            out = out * self
        return out

    def abs(self) -> "RealBall":
        s = self.sign()
        if s == 1:
            return self
        if s == -1:
            return -self
        hi = _highest([L.mpf_abs(self.lo), L.mpf_abs(self.hi)])
        return RealBall(L.fzero, hi, self.prec)

    def exp(self) -> "RealBall":
        p = self.prec
        return RealBall(*_widen(L.mpf_exp(self.lo, p, _F), L.mpf_exp(self.hi, p, _C), p), p)

    def log(self) -> "RealBall":
        if L.mpf_sign(self.lo) <= 0:
            raise DivisionByZero("log of a ball that is not positive")
        p = self.prec
        return RealBall(*_widen(L.mpf_log(self.lo, p, _F), L.mpf_log(self.hi, p, _C), p), p)

    def sqrt(self) -> "RealBall":
        if L.mpf_sign(self.lo) < 0:
            raise DivisionByZero("sqrt of a negative ball")
        p = self.prec
        return RealBall(L.mpf_sqrt(self.lo, p, _F), L.mpf_sqrt(self.hi, p, _C), p)

    def _lipschitz(self, f) -> "RealBall":
        """Enclosure of f over the ball for a 1-Lipschitz function f (cos, sin)."""
        p = self.prec
        m = L.mpf_shift(L.mpf_add(self.lo, self.hi, p + 2, L.round_nearest), -1)
        r = L.mpf_shift(L.mpf_sub(self.hi, self.lo, p, _C), -1)
        v = f(m, p, L.round_nearest)
        lo, hi = _widen(L.mpf_sub(v, r, p, _F), L.mpf_add(v, r, p, _C), p)
        return RealBall(lo, hi, p)

    def cos(self) -> "RealBall":
        return self._lipschitz(L.mpf_cos)

    def sin(self) -> "RealBall":
        return self._lipschitz(L.mpf_sin)

    def with_prec(self, prec: int) -> "RealBall":
        return RealBall(self.lo, self.hi, prec)


def certify_sign(
    x: RealBall,
    refine: Callable[[int], RealBall] | None = None,
    max_depth: int = MAX_DEPTH,
) -> int:
    """Certified sign of a nonzero quantity, refining precision on demand.

    ``refine(prec)`` must return a fresh enclosure of the same quantity at
    precision ``prec``. The precision doubles at each step.
    """
    s = x.sign()
    if s is not None:
        return s
    prec = x.prec
    if refine is not None:
        for _ in range(max_depth):
            prec *= 2
            s = refine(prec).sign()
            if s is not None:
                return s
    raise PrecisionExhausted(f"sign not certified up to {prec} bits (possible exact zero)")


def certified(compute: Callable[[int], RealBall], prec: int = DEFAULT_PREC, max_depth: int = MAX_DEPTH) -> int:
    """Sign of ``compute(prec)`` with automatic refinement."""
    return certify_sign(compute(prec), compute, max_depth)
