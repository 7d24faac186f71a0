"""Truncated multivariate power series over an arbitrary commutative ring."""

from __future__ import annotations

from itertools import product
from math import comb, factorial
from typing import Callable, Sequence

from ..errors import NonInvertibleConstantTerm


def _monomials(nvars: int, cap: int):
    for e in product(range(cap + 1), repeat=nvars):
        if sum(e) <= cap:
            yield e


class TruncSeries:
    """Series in ``nvars`` variables, truncated at total degree ``cap``.

    Coefficients live in any ring whose elements support +, - and *;
    ``zero`` is that ring's additive identity. An optional ``box`` bounds each
    variable's degree separately (used when only one coefficient is wanted).
    """

    __slots__ = ("nvars", "cap", "zero", "coeffs", "box")

    def __init__(self, nvars: int, cap: int, coeffs: dict, zero, box: Sequence[int] | None = None):
        self.nvars = nvars
        self.cap = cap
        self.zero = zero
        self.box = tuple(box) if box is not None else None
        self.coeffs = {e: c for e, c in coeffs.items() if self._keeps(e)}

    def _keeps(self, e) -> bool:
        if sum(e) > self.cap:
            return False
        return self.box is None or all(a <= b for a, b in zip(e, self.box))

    @classmethod
    def constant(cls, nvars, cap, c, zero, box=None) -> "TruncSeries":
        return cls(nvars, cap, {(0,) * nvars: c}, zero, box)

    def __getitem__(self, e) -> object:
        return self.coeffs.get(tuple(e), self.zero)

    def _like(self, coeffs) -> "TruncSeries":
        return TruncSeries(self.nvars, self.cap, coeffs, self.zero, self.box)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return self._like(out)

    def __neg__(self):
        return self._like({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TruncSeries":
        return self._like({e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        out: dict = {}
        items = list(other.coeffs.items())
        for e1, c1 in self.coeffs.items():
            d1 = sum(e1)
            for e2, c2 in items:
                if d1 + sum(e2) > self.cap:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                if self.box is not None and any(a > b for a, b in zip(e, self.box)):
                    continue
                t = c1 * c2
                out[e] = out[e] + t if e in out else t
        return self._like(out)

    __rmul__ = scale

    def coefficient_of_product(self, other: "TruncSeries", target) -> object:
        """Single coefficient of self*other without forming the product."""
        target = tuple(target)
        tot = self.zero
        for e1, c1 in self.coeffs.items():
            e2 = tuple(t - a for t, a in zip(target, e1))
            if min(e2) < 0:
                continue
            c2 = other.coeffs.get(e2)
            if c2 is not None:
                tot = tot + c1 * c2
        return tot

    def constant_term(self):
        return self[(0,) * self.nvars]

    def map(self, f: Callable) -> "TruncSeries":
        return self._like({e: f(c) for e, c in self.coeffs.items()})


def series_inv(s: TruncSeries, invert: Callable | None = None) -> TruncSeries:
    """Multiplicative inverse up to the cap; the constant term must be a unit."""
    c0 = s.constant_term()
    try:
        inv0 = invert(c0) if invert is not None else 1 / c0
    except ZeroDivisionError as exc:
        raise NonInvertibleConstantTerm("constant term is not invertible") from exc
    zero_e = (0,) * s.nvars
    tail = s._like({e: -(c * inv0) for e, c in s.coeffs.items() if e != zero_e})
    one = inv0 * c0
    out = TruncSeries.constant(s.nvars, s.cap, one, s.zero, s.box)
    acc = out
    for _ in range(s.cap):
        acc = acc * tail
        if not acc.coeffs:
            break
        out = out + acc
    return out.scale(inv0)


def univariate_inverse(coeffs: Sequence, order: int, invert: Callable | None = None) -> list:
    """Inverse of a one-variable series given by its first coefficients."""
    c0 = coeffs[0]
    try:
        inv0 = invert(c0) if invert is not None else 1 / c0
    except ZeroDivisionError as exc:
        raise NonInvertibleConstantTerm("constant term is not invertible") from exc
    out = [inv0]
    for m in range(1, order + 1):
        acc = None
        for j in range(1, m + 1):
            if j < len(coeffs):
                t = coeffs[j] * out[m - j]
                acc = t if acc is None else acc + t
        out.append(-(acc * inv0) if acc is not None else out[0] * 0)
    return out


def compose_linear(uni: Sequence, linear: Sequence, nvars: int, cap: int, zero, box=None) -> TruncSeries:
    """Series of sum_m uni[m] * (sum_j linear[j] y_j)^m, truncated.

    ``uni`` holds the one-variable coefficients; ``linear`` the coefficients of
    the linear form (ring elements).
    """
    out: dict = {}
    # powers of each linear coefficient
    maxdeg = min(cap, len(uni) - 1)
    pows = []
    for a in linear:
        p = [None] * (maxdeg + 1)
        p[0] = None  # multiplicative identity handled implicitly
        if maxdeg >= 1:
            p[1] = a
        for k in range(2, maxdeg + 1):
            p[k] = p[k - 1] * a
        pows.append(p)
    bx = box if box is not None else (cap,) * nvars
    for e in _monomials(nvars, maxdeg):
        if any(a > b for a, b in zip(e, bx)):
            continue
        m = sum(e)
        c = uni[m]
        # multinomial coefficient
        mult = factorial(m)
        for a in e:
            mult //= factorial(a)
        term = c * mult
        for j, a in enumerate(e):
            if a:
                term = term * pows[j][a]
        out[e] = term
    return TruncSeries(nvars, cap, out, zero, box)


def exp_coefficients(order: int, scale=1) -> list:
    """Coefficients of exp(scale * t) up to t^order (as given ring elements / Fractions)."""
    from fractions import Fraction

    out = []
    pw = None
    for m in range(order + 1):
        pw = 1 if m == 0 else (scale if m == 1 else pw * scale)
        out.append(pw * Fraction(1, factorial(m)))
    return out


__all__ = [
    "TruncSeries",
    "series_inv",
    "univariate_inverse",
    "compose_linear",
    "exp_coefficients",
    "comb",
]
