"""Totally real number fields: exact elements, certified embeddings, lattices, units.

A field is Q(theta) with theta a root of a monic irreducible integer
polynomial whose roots are all real. Embeddings tau_1 < ... < tau_n are
ordered by the value they give to theta, so tau_n is the largest root.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd, isqrt
from typing import Iterable, Sequence

from .errors import (
    DependentUnits,
    DivisionByZero,
    InputError,
    NotAUnit,
    NotARoot,
    NotSublattice,
    NotTotallyReal,
    PrecisionExhausted,
    Ramified,
    SignNormalizationImpossible,
    SingularMatrix,
)
from .kernel.ball import DEFAULT_PREC, MAX_DEPTH, RealBall
from .kernel.linalg import det, frac_str, hnf_rows, lcm_denominators, smith_normal_form, solve, to_fraction


# ---------------------------------------------------------------- polynomials

def _peval(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _pderiv(p):
    return [i * c for i, c in enumerate(p)][1:]


def _prem(a, b):
    a = [Fraction(x) for x in a]
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        s = len(a) - len(b)
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _sturm_chain(p):
    chain = [[Fraction(c) for c in p], [Fraction(c) for c in _pderiv(p)]]
    while True:
        r = _prem(chain[-2], chain[-1])
        if not r or not any(r):
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x) -> int:
    signs = [s for s in ((_peval(q, x) > 0) - (_peval(q, x) < 0) for q in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def poly_discriminant(p: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial (resultant via Sylvester determinant)."""
    n = len(p) - 1
    dp = _pderiv(p)
    m = n - 1
    size = n + m
    rows = []
    P = list(reversed(p))
    Q = list(reversed(dp))
    for i in range(m):
        rows.append([0] * i + P + [0] * (size - i - len(P)))
    for i in range(n):
        rows.append([0] * i + Q + [0] * (size - i - len(Q)))
    res = det(rows)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return int(sign * res)


# ---------------------------------------------------------------- field

class NumberField:
    """Q(theta) for a monic irreducible totally real polynomial.

    ``poly`` lists integer coefficients from the constant term upward, so
    x^2 - x - 1 is ``[-1, -1, 1]``.
    """

    def __init__(self, poly: Sequence[int], name: str | None = None, check_irreducible: bool = True):
        p = [int(c) for c in poly]
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        if p[-1] != 1:
            raise InputError("minimal polynomial must be monic")
        self.poly: tuple[int, ...] = tuple(p)
        self.n = len(p) - 1
        if self.n < 1:
            raise InputError("degree must be at least 1")
        self.name = name or f"Q[x]/({self.poly_str()})"
        self.disc = poly_discriminant(p) if self.n > 1 else 1
        if check_irreducible and self.n > 1:
            self._check_irreducible()
        self._isolate_roots()
        self._root_cache: dict[int, tuple[RealBall, ...]] = {}

    # -- construction helpers
    def poly_str(self) -> str:
        terms = []
        for i in range(len(self.poly) - 1, -1, -1):
            c = self.poly[i]
            if c:
                mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(f"{c}{'*' if mon else ''}{mon}" if (abs(c) != 1 or not mon) else ("-" if c < 0 else "") + mon)
        return " + ".join(terms).replace("+ -", "- ")

    def _check_irreducible(self):
        if self.n == 2:
            d = self.disc
            if d >= 0 and isqrt(d) ** 2 == d:
                raise InputError("polynomial is reducible over Q")
            return
        import sympy

        x = sympy.Symbol("x")
        if not sympy.Poly(list(reversed(self.poly)), x).is_irreducible:
            raise InputError("polynomial is reducible over Q")

    def _isolate_roots(self):
        p = self.poly
        if self.n == 1:
            r = Fraction(-p[0])
            self._iso = [(r, r)]
            return
        chain = _sturm_chain(p)
        bound = Fraction(1 + max(abs(c) for c in p[:-1]))
        lo, hi = -bound, bound
        total = _sign_changes(chain, lo) - _sign_changes(chain, hi)
        if total != self.n:
            raise NotTotallyReal(f"{total} real roots out of {self.n}")
        out = []
        stack = [(lo, hi)]
        while stack:
            a, b = stack.pop()
            k = _sign_changes(chain, a) - _sign_changes(chain, b)
            if k == 0:
                continue
            if k == 1 and _peval(p, a) != 0 and _peval(p, b) != 0:
                out.append((a, b))
                continue
            m = (a + b) / 2
            if _peval(p, m) == 0:
                m += (b - a) / 7
            stack.extend([(a, m), (m, b)])
        self._iso = sorted(out)

    @property
    def is_rational_field(self) -> bool:
        return self.n == 1

    # -- certified roots
    def root_balls(self, prec: int = DEFAULT_PREC) -> tuple[RealBall, ...]:
        """Enclosures of theta under tau_1..tau_n, width below 2^-prec."""
        if prec in self._root_cache:
            return self._root_cache[prec]
        out = []
        target = Fraction(1, 2 ** (prec + 4))
        for a, b in self._iso:
            if a == b:
                out.append(RealBall.exact(a, prec))
                continue
            out.append(self._refine_root(a, b, target, prec))
        self._root_cache[prec] = tuple(out)
        return self._root_cache[prec]

    def _refine_root(self, a: Fraction, b: Fraction, target: Fraction, prec: int) -> RealBall:
        import mpmath

        p = self.poly
        sa = _peval(p, a) > 0
        # Newton from the midpoint in floating point, then certify by a sign change
        with mpmath.workprec(prec + 40):
            x = mpmath.mpf(a.numerator) / a.denominator / 2 + mpmath.mpf(b.numerator) / b.denominator / 2
            for _ in range(prec):
                fx = sum(c * x**i for i, c in enumerate(p))
                dfx = sum(i * c * x ** (i - 1) for i, c in enumerate(p) if i)
                if dfx == 0:
                    break
                nx = x - fx / dfx
                if abs(nx - x) < mpmath.mpf(2) ** (-prec - 30):
                    x = nx
                    break
                x = nx
            m, e = mpmath.frexp(x)
            guess = Fraction(int(mpmath.ldexp(m, prec + 40)), 2 ** (prec + 40)) * Fraction(2) ** e
        lo, hi = guess - target / 2, guess + target / 2
        if a <= lo and hi <= b and (_peval(p, lo) > 0) == sa and (_peval(p, hi) > 0) != sa:
            return RealBall.interval(lo, hi, prec)
        while b - a > target:  # fallback: bisection
            m = (a + b) / 2
            if (_peval(p, m) > 0) == sa:
                a = m
            else:
                b = m
        return RealBall.interval(a, b, prec)

    def isolating_intervals(self) -> list[tuple[Fraction, Fraction]]:
        return list(self._iso)

    # -- elements
    def __call__(self, coords) -> "FieldElement":
        if isinstance(coords, FieldElement):
            return coords
        if isinstance(coords, (int, Fraction, str)):
            return FieldElement(self, [to_fraction(coords)] + [Fraction(0)] * (self.n - 1))
        c = [to_fraction(x) for x in coords]
        if len(c) > self.n:
            return FieldElement(self, self._reduce(c))
        return FieldElement(self, c + [Fraction(0)] * (self.n - len(c)))

    @cached_property
    def theta(self) -> "FieldElement":
        return self([0, 1]) if self.n > 1 else self(-self.poly[0])

    @cached_property
    def one(self) -> "FieldElement":
        return self(1)

    @cached_property
    def zero(self) -> "FieldElement":
        return self(0)

    def _reduce(self, c: list[Fraction]) -> list[Fraction]:
        n, p = self.n, self.poly
        c = list(c)
        for i in range(len(c) - 1, n - 1, -1):
            a = c[i]
            if a:
                for j in range(n):
                    c[i - n + j] -= a * p[j]
        c = c[:n]
        return c + [Fraction(0)] * (n - len(c))

    @cached_property
    def trace_powers(self) -> tuple[Fraction, ...]:
        """Tr(theta^k) for k = 0..2n-2."""
        return tuple(self.theta_power(k).trace() if k else Fraction(self.n) for k in range(2 * self.n - 1))

    @lru_cache(maxsize=None)
    def theta_power(self, k: int) -> "FieldElement":
        if k == 0:
            return self.one
        return self.theta_power(k - 1) * self.theta

    def power_basis(self) -> list["FieldElement"]:
        return [self.theta_power(i) for i in range(self.n)]

    @cached_property
    def maximal_order_guess(self) -> "FLattice":
        """Z[theta]; exact maximal order only when the discriminant is squarefree or equal to a fundamental one."""
        return FLattice(self, self.power_basis())

    def trace_form(self, a: "FieldElement", b: "FieldElement") -> Fraction:
        return (a * b).trace()

    def __repr__(self):
        return f"NumberField({list(self.poly)})"

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)


class FieldElement:
    """Element of F in power-basis rational coordinates; immutable."""

    __slots__ = ("F", "c")

    def __init__(self, F: NumberField, coords: Sequence[Fraction]):
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "c", tuple(Fraction(x) for x in coords))

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    # arithmetic
    def _co(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.F is not self.F and other.F != self.F:
                raise InputError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.F(other)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.F, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.F, [-a for a in self.c])

    def __sub__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.F, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.F, [a * other for a in self.c])
        o = self._co(other)
        if o is NotImplemented:
            return o
        n = self.F.n
        if n == 1:
            return FieldElement(self.F, [self.c[0] * o.c[0]])
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.F, self.F._reduce(prod))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational element")
        return self.c[0]

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of x -> self*x in the power basis (column j = coords of self*theta^j)."""
        cols = [(self * self.F.theta_power(j)).c for j in range(self.F.n)]
        return [[cols[j][i] for j in range(self.F.n)] for i in range(self.F.n)]

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return self.F(1 / self.c[0])
        x = solve(self.mult_matrix(), [1] + [0] * (self.F.n - 1))
        return FieldElement(self.F, x)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(other))
        o = self._co(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.F.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def trace(self) -> Fraction:
        if self.F.n == 1:
            return self.c[0]
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(self.F.n)), Fraction(0))

    def norm(self) -> Fraction:
        if self.F.n == 1:
            return self.c[0]
        return det(self.mult_matrix())

    def charpoly_is_integral(self) -> bool:
        """True iff the element is an algebraic integer (integer characteristic polynomial)."""
        import sympy

        if self.F.n == 1:
            return self.c[0].denominator == 1
        if self.F.n == 2:
            return self.trace().denominator == 1 and self.norm().denominator == 1
        M = sympy.Matrix(self.mult_matrix())
        return all(sympy.Rational(c).q == 1 for c in M.charpoly().all_coeffs())

    def conjugate(self) -> "FieldElement":
        """Galois conjugate for n = 2 (theta -> Tr(theta) - theta)."""
        if self.F.n == 1:
            return self
        if self.F.n != 2:
            raise InputError("conjugate only defined for quadratic fields")
        t = -self.F.poly[1]
        u, v = self.c
        return FieldElement(self.F, [u + v * t, -v])

    # embeddings
    def embed(self, j: int, prec: int = DEFAULT_PREC) -> RealBall:
        if self.is_rational():
            return RealBall.exact(self.c[0], prec)
        r = self.F.root_balls(prec)[j]
        acc = RealBall.exact(0, prec)
        for a in reversed(self.c):
            acc = acc * r + a
        return acc

    def embeddings(self, prec: int = DEFAULT_PREC) -> list[RealBall]:
        return [self.embed(j, prec) for j in range(self.F.n)]

    def approx(self, j: int, prec: int = 80):
        return self.embed(j, prec).mid

    def sign_at(self, j: int) -> int:
        """Exact sign of tau_j(self); 0 only for the zero element."""
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.c[0] > 0 else -1
        if self.F.n == 2:
            return _quad_sign(self, j)
        prec = DEFAULT_PREC
        for _ in range(MAX_DEPTH + 1):
            s = self.embed(j, prec).sign()
            if s is not None:
                return s
            prec *= 2
        raise PrecisionExhausted("embedding sign not certified")

    def is_totally_positive(self) -> bool:
        return all(self.sign_at(j) > 0 for j in range(self.F.n))

    # comparison / io
    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and self.F == other.F
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for i, a in enumerate(self.c):
            if a:
                mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                if mon and a == 1:
                    parts.append(mon)
                elif mon and a == -1:
                    parts.append("-" + mon)
                else:
                    parts.append(frac_str(a) + ("*" + mon if mon else ""))
        return (" + ".join(parts).replace("+ -", "- ")) if parts else "0"

    def to_record(self) -> list[str]:
        return [frac_str(a) for a in self.c]


def _quad_sign(z: FieldElement, j: int) -> int:
    """Exact sign of tau_j(u + v*theta) in a real quadratic field."""
    u, v = z.c
    p = z.F.poly
    half_trace = Fraction(-p[1], 2)
    if v == 0:
        return (u > 0) - (u < 0)
    r = -u / v  # tau_j(z) = v * (theta_j - r)
    val = _peval(p, r)
    if val < 0:  # theta_1 < r < theta_2
        below = j == 1
    else:  # r outside [theta_1, theta_2]
        below = r < half_trace  # r < theta_1: both roots exceed r
    s = 1 if below else -1  # sign of theta_j - r
    return s if v > 0 else -s


# ---------------------------------------------------------------- lattices

class FLattice:
    """Full-rank Z-module in F, stored as (d, HNF of d*L in power-basis coordinates)."""

    def __init__(self, F: NumberField, generators: Iterable, _canonical=None):
        self.F = F
        if _canonical is not None:
            self.d, self.hnf = _canonical
            return
        gens = [F(g) for g in generators]
        if not gens:
            raise SingularMatrix("empty generator set")
        d = lcm_denominators(x for g in gens for x in g.c)
        rows = [[int(x * d) for x in g.c] for g in gens]
        H = hnf_rows(rows)
        # minimal common denominator
        g = d
        for r in H:
            for x in r:
                g = gcd(g, x)
        if g > 1:
            H = [[x // g for x in r] for r in H]
            d //= g
        self.d = d
        self.hnf = tuple(tuple(r) for r in H)

    @property
    def basis(self) -> list[FieldElement]:
        return [self.F([Fraction(x, self.d) for x in r]) for r in self.hnf]

    def basis_matrix(self) -> list[list[Fraction]]:
        return [[Fraction(x, self.d) for x in r] for r in self.hnf]

    def coords(self, x) -> list[Fraction]:
        x = self.F(x)
        M = self.basis_matrix()
        At = [[M[j][i] for j in range(self.F.n)] for i in range(self.F.n)]
        return solve(At, x.c)

    def contains(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    __contains__ = contains

    def covolume(self) -> Fraction:
        """|det| of the basis in power-basis coordinates."""
        return abs(det(self.basis_matrix()))

    def index_in(self, other: "FLattice") -> int:
        if not other.contains_lattice(self):
            raise NotSublattice("lattice is not contained in the other")
        q = self.covolume() / other.covolume()
        assert q.denominator == 1
        return int(q)

    def contains_lattice(self, other: "FLattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __mul__(self, other):
        if isinstance(other, FLattice):
            return FLattice(self.F, [a * b for a in self.basis for b in other.basis])
        c = self.F(other)
        return FLattice(self.F, [c * b for b in self.basis])

    __rmul__ = __mul__

    def __add__(self, other: "FLattice") -> "FLattice":
        return FLattice(self.F, self.basis + other.basis)

    def gram(self) -> list[list[Fraction]]:
        B = self.basis
        return [[(a * b).trace() for b in B] for a in B]

    def dual(self) -> "FLattice":
        return dual_lattice(self)

    def __eq__(self, other):
        return isinstance(other, FLattice) and self.F == other.F and self.d == other.d and self.hnf == other.hnf

    def __hash__(self):
        return hash((self.d, self.hnf))

    def __repr__(self):
        return f"FLattice([{', '.join(str(b) for b in self.basis)}])"

    def to_record(self) -> list[list[str]]:
        return [b.to_record() for b in self.basis]


def dual_lattice(L: FLattice) -> FLattice:
    """{x : Tr(x L) in Z}, via the inverse of the trace Gram matrix."""
    from .kernel.linalg import inverse

    G = L.gram()
    Gi = inverse(G)
    B = L.basis
    n = L.F.n
    dual = [sum((B[j] * Gi[i][j] for j in range(n)), L.F.zero) for i in range(n)]
    return FLattice(L.F, dual)


def coset_reps(L1: FLattice, L2: FLattice) -> list[FieldElement]:
    """One representative per coset of L1/L2 (requires L2 inside L1), via SNF."""
    if not L1.contains_lattice(L2):
        raise NotSublattice("L2 is not contained in L1")
    b1 = L1.basis
    n = L1.F.n
    M = [[int(c) for c in L1.coords(c2)] for c2 in L2.basis]
    U, D, V = smith_normal_form(M)
    # c = M b, U c = D (V^-1 b); the vectors b' = V^-1 b form a basis of L1
    from .kernel.linalg import inverse

    Vi = inverse(V)
    bprime = [sum((b1[j] * Vi[i][j] for j in range(n)), L1.F.zero) for i in range(n)]
    ds = [abs(D[i][i]) for i in range(n)]
    reps = []
    for ks in product(*[range(d) for d in ds]):
        reps.append(sum((bprime[i] * ks[i] for i in range(n)), L1.F.zero))
    return reps


def prime_ideal(F: NumberField, p: int, c: int, order: FLattice | None = None) -> FLattice:
    """The degree-one prime p*O + (theta - c)*O above p."""
    from sympy import isprime

    if not isprime(p):
        raise InputError(f"{p} is not prime")
    if _peval(F.poly, c) % p:
        raise NotARoot(f"min_poly({c}) is not divisible by {p}")
    if F.disc % p == 0:
        raise Ramified(f"{p} divides the discriminant {F.disc}")
    O = order or F.maximal_order_guess
    gens = [b * p for b in O.basis] + [b * (F.theta - c) for b in O.basis]
    q = FLattice(F, gens)
    if q.index_in(O) != p:
        raise Ramified(f"the ideal above {p} does not have norm {p}")
    return q


def degree_one_roots(F: NumberField, p: int) -> list[int]:
    return [c for c in range(p) if _peval(F.poly, c) % p == 0]


# ---------------------------------------------------------------- units

@dataclass(frozen=True)
class UnitSystem:
    """Generators of a free unit subgroup V with its index [U_F : V]."""

    field: NumberField
    etas: tuple
    index: int = 1
    totally_positive: bool = dfield(default=False, compare=False)

    @property
    def rank(self) -> int:
        return len(self.etas)

    def element(self, ks: Sequence[int]) -> FieldElement:
        out = self.field.one
        for eta, k in zip(self.etas, ks):
            if k:
                out = out * _cached_power(eta, k)
        return out

    def enumerate(self, K: int):
        """All (ks, v) with |k_i| <= K."""
        for ks in product(range(-K, K + 1), repeat=self.rank):
            yield ks, self.element(ks)


@lru_cache(maxsize=8192)
def _cached_power(eta: FieldElement, k: int) -> FieldElement:
    return eta**k


@dataclass(frozen=True)
class UnitCertificate:
    units: UnitSystem
    norms: tuple
    flipped: tuple
    log_det: RealBall | None
    totally_positive: bool

    def summary(self) -> dict:
        return {
            "etas": [e.to_record() for e in self.units.etas],
            "norms": [frac_str(x) for x in self.norms],
            "sign_flipped": list(self.flipped),
            "index": self.units.index,
            "totally_positive": self.totally_positive,
            "log_det": str(self.log_det) if self.log_det is not None else None,
        }


def log_vector(x: FieldElement, prec: int = DEFAULT_PREC) -> list[RealBall]:
    return [e.abs().log() for e in x.embeddings(prec)]


def validate_units(U: UnitSystem, prec: int = DEFAULT_PREC) -> UnitCertificate:
    """Certify unit-ness, sign-normalize tau_n > 0 and check independence."""
    F = U.field
    n = F.n
    if len(U.etas) != n - 1:
        raise DependentUnits(f"need {n - 1} generators, got {len(U.etas)}")
    etas, norms, flipped = [], [], []
    for eta in U.etas:
        eta = F(eta)
        N = eta.norm()
        if abs(N) != 1 or not eta.charpoly_is_integral() or not eta.inverse().charpoly_is_integral():
            raise NotAUnit(f"{eta} is not a unit (norm {N})")
        s = eta.sign_at(n - 1)
        if s == 0:
            raise SignNormalizationImpossible(f"{eta} vanishes at the last embedding")
        if s < 0:
            eta = -eta
            N = eta.norm()
        etas.append(eta)
        norms.append(N)
        flipped.append(s < 0)
    log_det = None
    if n > 1:
        from .kernel.linalg import det_generic

        p = prec
        for _ in range(MAX_DEPTH + 1):
            rows = [log_vector(e, p)[: n - 1] for e in etas]
            log_det = det_generic(rows)
            if log_det.sign() is not None:
                break
            p *= 2
        else:
            raise DependentUnits("logarithmic images are dependent")
    tp = all(e.is_totally_positive() for e in etas)
    units = UnitSystem(F, tuple(etas), U.index, tp)
    return UnitCertificate(units, tuple(norms), tuple(flipped), log_det, tp)


def fundamental_unit_quadratic(F: NumberField) -> FieldElement:
    """Fundamental unit of Z[theta] for a real quadratic field, normalized with tau_2 > 1.

    Scans continued-fraction convergents h/k of the larger root and returns
    the first h - k*theta of norm +-1, inverted and sign-adjusted.
    """
    if F.n != 2:
        raise InputError("continued-fraction unit search needs a quadratic field")
    c0, c1, _ = F.poly
    delta = c1 * c1 - 4 * c0
    P, Q = -c1, 2  # theta_2 = (P + sqrt(delta)) / Q
    if (delta - P * P) % Q:
        P, Q, delta = P * 2, Q * 2, delta * 4
    s = isqrt(delta)
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    for _ in range(100000):
        a = (P + s) // Q if Q > 0 else (P + s + 1) // Q
        h_prev, h = a * h_prev + h, h_prev
        k_prev, k = a * k_prev + k, k_prev
        # after the swap (h_prev, k_prev) is the newest convergent
        hh, kk = h_prev, k_prev
        u = F([hh, -kk])
        if abs(u.norm()) == 1 and kk > 0:
            eps = u if abs(u.approx(1)) > 1 else u.inverse()
            return eps if eps.sign_at(1) > 0 else -eps
        P = a * Q - P
        Q = (delta - P * P) // Q
    raise InputError("no unit found within the iteration bound")
