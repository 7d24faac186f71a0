"""Signed cone decompositions of the torus modulo a unit lattice.

The central object is the half-open cone indicator chi_B(x, y): the cone
spanned by the vectors f_i(y) = sign(Tr(f_i y)) f_i, with boundary points
assigned by pushing x slightly along the last coordinate axis, weighted
by sign(det B) * prod sign(Tr(f_i y)).

Sign decisions are exact for rational data and for quadratic fields (the
second embedding is the Galois conjugate, so every quantity lives in F and
is compared exactly under the first embedding). Higher-degree fields use
certified interval arithmetic and report non-generic points when a sign
cannot be separated from zero.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

import mpmath

from .errors import (
    DegenerateBasis,
    InputError,
    NonGenericPoint,
    NotTotallyPositive,
    OnForbiddenHyperplane,
    PrecisionExhausted,
    TruncationInsufficient,
    ZeroCoordinateY,
)
from .field import FieldElement, NumberField, UnitSystem, log_vector
from .kernel.ball import DEFAULT_PREC, MAX_DEPTH, RealBall
from .kernel.linalg import det_generic, frac_str, inverse, to_fraction


# ---------------------------------------------------------------- scalar backends

class _Undetermined(Exception):
    """A ball sign could not be separated from zero at the current precision."""


class _Rational:
    exact = True

    def __init__(self, n: int):
        self.n = n

    def embed(self, f):
        if isinstance(f, FieldElement):
            return [f.rational()]
        return [to_fraction(c) for c in f]

    def const(self, q):
        return to_fraction(q)

    def sign(self, s) -> int:
        return (s > 0) - (s < 0)


class _Quadratic:
    """Reals of the form tau_1(z), z in F, for a real quadratic field."""

    exact = True

    def __init__(self, F: NumberField):
        self.F = F
        self.n = 2

    def embed(self, f: FieldElement):
        return [f, f.conjugate()]

    def const(self, q):
        if isinstance(q, FieldElement):
            return q
        return self.F(to_fraction(q))

    def sign(self, s) -> int:
        return s.sign_at(0)


class _Balls:
    exact = False

    def __init__(self, F: NumberField | None, n: int, prec: int):
        self.F = F
        self.n = n
        self.prec = prec

    def embed(self, f):
        if isinstance(f, FieldElement):
            return f.embeddings(self.prec)
        return [RealBall.exact(to_fraction(c), self.prec) for c in f]

    def const(self, q):
        if isinstance(q, RealBall):
            return q
        return RealBall.exact(to_fraction(q), self.prec)

    def sign(self, s) -> int:
        r = s.sign()
        if r is None:
            raise _Undetermined()
        return r


def _exact_backend(F: NumberField | None, n: int):
    if F is None or F.n == 1:
        return _Rational(n)
    if F.n == 2:
        return _Quadratic(F)
    return None


def _run(F, n, fn):
    """Evaluate fn(backend) exactly when possible, else with refining balls."""
    be = _exact_backend(F, n)
    if be is not None:
        return fn(be)
    prec = DEFAULT_PREC
    for _ in range(MAX_DEPTH + 1):
        try:
            return fn(_Balls(F, n, prec))
        except _Undetermined:
            prec *= 2
    raise PrecisionExhausted("sign undetermined at maximal precision")


# ---------------------------------------------------------------- points

def to_point(be, x) -> list:
    """Coordinates of x in the backend: FieldElement -> embedding, sequence -> coordinatewise."""
    if isinstance(x, FieldElement):
        return be.embed(x)
    if isinstance(x, (int, Fraction)):
        return [be.const(x)]
    out = []
    for c in x:
        if isinstance(c, (FieldElement, RealBall)) and not (isinstance(c, FieldElement) and isinstance(be, _Balls)):
            out.append(c)
        elif isinstance(c, FieldElement):  # tau_1-interpreted scalar fed to a ball backend
            out.append(c.embed(0, be.prec))
        else:
            out.append(be.const(c))
    return out


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


# ---------------------------------------------------------------- bases

class ConeBasis:
    """n vectors f_1..f_n: field elements of F, or rational vectors in test mode."""

    def __init__(self, vectors: Sequence, field: NumberField | None = None, check: bool = True):
        self.field = field
        if field is not None:
            self.elements: tuple[FieldElement, ...] | None = tuple(field(v) for v in vectors)
            self.vectors = None
            self.n = field.n
        else:
            self.elements = None
            self.vectors = tuple(tuple(to_fraction(c) for c in v) for v in vectors)
            self.n = len(self.vectors)
            if any(len(v) != self.n for v in self.vectors):
                raise InputError("test-mode basis must consist of n vectors in Q^n")
        if len(vectors) != self.n:
            raise InputError(f"need {self.n} vectors, got {len(vectors)}")
        self._cols: dict = {}
        if check:
            if self.det_sign() == 0:
                raise DegenerateBasis("vectors are linearly dependent")

    # data
    @property
    def items(self) -> tuple:
        return self.elements if self.elements is not None else self.vectors

    def columns(self, be) -> list[list]:
        key = (type(be).__name__, getattr(be, "prec", None))
        if key not in self._cols:
            self._cols[key] = [be.embed(f) for f in self.items]
        return self._cols[key]

    def _matrix_rows(self, be):
        cols = self.columns(be)
        return [[cols[i][j] for i in range(self.n)] for j in range(self.n)]

    def det_sign(self) -> int:
        if self.elements is None:
            from .kernel.linalg import det

            d = det([[v[j] for v in self.vectors] for j in range(self.n)])
            return (d > 0) - (d < 0)
        if self.field.n <= 2:
            return _run(self.field, self.n, lambda be: be.sign(det_generic(self._matrix_rows(be))))
        try:
            return _run(self.field, self.n, lambda be: be.sign(det_generic(self._matrix_rows(be))))
        except PrecisionExhausted:
            return 0

    def minors_nonzero(self) -> bool:
        """Membership in U: every square minor of the embedding matrix is nonzero."""
        def check(be):
            rows = self._matrix_rows(be)
            n = self.n
            for k in range(1, n + 1):
                for R in combinations(range(n), k):
                    for C in combinations(range(n), k):
                        m = det_generic([[rows[r][c] for c in C] for r in R])
                        if be.exact:
                            if be.sign(m) == 0:
                                return False
                        else:
                            be.sign(m)
            return True

        try:
            return _run(self.field, self.n, check)
        except PrecisionExhausted:
            return False

    def require_U(self) -> "ConeBasis":
        if not self.minors_nonzero():
            raise DegenerateBasis(f"basis {self} has a vanishing minor (not in U)")
        return self

    def dual(self) -> "ConeBasis":
        """Trace-dual basis: Tr(f_i^v f_j) = delta_ij."""
        n = self.n
        if self.elements is None:
            M = [[self.vectors[i][j] for i in range(n)] for j in range(n)]  # columns f_i
            Mi = inverse(M)
            return ConeBasis([tuple(Mi[i]) for i in range(n)])
        F = self.field
        G = [[(a * b).trace() for b in self.elements] for a in self.elements]
        Gi = inverse(G)
        dual = [sum((self.elements[j] * Gi[i][j] for j in range(n)), F.zero) for i in range(n)]
        return ConeBasis(dual, F)

    def scaled(self, v: FieldElement) -> "ConeBasis":
        return ConeBasis([v * f for f in self.elements], self.field, check=False)

    def negated(self, i: int) -> "ConeBasis":
        items = list(self.items)
        items[i] = tuple(-c for c in items[i]) if self.elements is None else -items[i]
        return ConeBasis(items, self.field, check=False)

    def projective_key(self) -> tuple:
        """Basis up to positive or negative rescaling of each vector."""
        out = []
        for f in self.items:
            c = f.c if self.elements is not None else f
            piv = next(x for x in c if x != 0)
            out.append(tuple(x / piv for x in c))
        return tuple(out)

    def to_record(self) -> list[list[str]]:
        if self.elements is not None:
            return [f.to_record() for f in self.elements]
        return [[frac_str(c) for c in v] for v in self.vectors]

    def __repr__(self):
        return "ConeBasis(" + ", ".join(str(f) for f in self.items) + ")"

    def __eq__(self, other):
        return isinstance(other, ConeBasis) and self.items == other.items

    def __hash__(self):
        return hash(self.items)


@dataclass(frozen=True)
class SignedDecomposition:
    terms: tuple  # ((ConeBasis, int), ...)
    field: NumberField | None = None
    note: str = dfield(default="", compare=False)

    def __neg__(self):
        return SignedDecomposition(tuple((B, -c) for B, c in self.terms), self.field)

    def __add__(self, other: "SignedDecomposition"):
        return SignedDecomposition(self.terms + other.terms, self.field)

    def bases(self) -> list[ConeBasis]:
        return [B for B, _ in self.terms]

    def to_records(self) -> list[dict]:
        return [{"coefficient": c, "vectors": B.to_record()} for B, c in self.terms]

    @classmethod
    def from_records(cls, recs: Iterable[dict], field: NumberField | None = None) -> "SignedDecomposition":
        terms = []
        for r in recs:
            vecs = [[to_fraction(x) for x in v] for v in r["vectors"]]
            B = ConeBasis([field(v) for v in vecs] if field else vecs, field)
            terms.append((B, int(r["coefficient"])))
        return cls(tuple(terms), field)


# ---------------------------------------------------------------- decomposition construction

def _perm_sign(p: Sequence[int]) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def log_det_sign(basis: Sequence[FieldElement]) -> int:
    """Certified sign of det(1, Log f_2, ..., Log f_n) (columns)."""
    n = len(basis)
    prec = DEFAULT_PREC
    for _ in range(MAX_DEPTH + 1):
        cols = [[RealBall.exact(1, prec)] * n] + [log_vector(f, prec) for f in basis[1:]]
        rows = [[cols[i][j] for i in range(n)] for j in range(n)]
        s = det_generic(rows).sign()
        if s is not None:
            return s
        prec *= 2
    raise PrecisionExhausted("log determinant sign not certified")


def sigma_decomposition(U: UnitSystem) -> SignedDecomposition:
    """sum over sigma in S_{n-1} of sign(det(1, Log B_sigma)) B_sigma.

    B_sigma = (1, eta_s1, eta_s1 eta_s2, ...), with s = sigma.
    """
    F = U.field
    n = F.n
    if n == 1:
        return SignedDecomposition(((ConeBasis([F.one], F), 1),), F, note="effective")
    terms = []
    eff = set()
    for sigma in permutations(range(n - 1)):
        f = [F.one]
        cur = F.one
        for j in sigma:
            cur = cur * U.etas[j]
            f.append(cur)
        B = ConeBasis(f, F).require_U()
        coef = log_det_sign(f)
        terms.append((B, coef))
        eff.add(_perm_sign(sigma) * B.det_sign())
    return SignedDecomposition(tuple(terms), F, note="effective" if len(eff) == 1 else "signed")


def is_effective(D: SignedDecomposition) -> bool:
    return D.note == "effective"


def dual_decomposition(D: SignedDecomposition) -> SignedDecomposition:
    out = []
    for B, c in D.terms:
        B.require_U()
        Bd = B.dual().require_U()
        out.append((Bd, c))
    return SignedDecomposition(tuple(out), D.field, note=D.note)


# ---------------------------------------------------------------- chi functions

def _chi_core(B: ConeBasis, be, x: list, y: list) -> int:
    n = B.n
    cols = B.columns(be)
    s = []
    for i in range(n):
        t = be.sign(_dot(cols[i], y))
        if t == 0:
            raise OnForbiddenHyperplane(f"Tr(f_{i + 1} y) = 0")
        s.append(t)
    dsign = be.sign(det_generic([[cols[i][j] for i in range(n)] for j in range(n)]))
    weight = dsign
    for t in s:
        weight *= t
    e_n = [be.const(0)] * (n - 1) + [be.const(1)]
    x_is_zero = be.exact and all(be.sign(c) == 0 for c in x)
    for i in range(n):
        if x_is_zero:
            ci = 0
        else:
            mod = [x if k == i else cols[k] for k in range(n)]
            ci = s[i] * dsign * be.sign(det_generic([[mod[k][j] for k in range(n)] for j in range(n)]))
        if ci < 0:
            return 0
        if ci == 0:
            mod = [e_n if k == i else cols[k] for k in range(n)]
            di = s[i] * dsign * be.sign(det_generic([[mod[k][j] for k in range(n)] for j in range(n)]))
            if di == 0:
                raise DegenerateBasis("e_n lies on a face hyperplane (basis not in U)")
            if di < 0:
                return 0
    return weight


def chi_B(B: ConeBasis, x, y) -> int:
    """Signed half-open cone indicator chi_B(x, y) in {-1, 0, 1}."""
    def fn(be):
        return _chi_core(B, be, to_point(be, x), to_point(be, y))

    try:
        return _run(B.field, B.n, fn)
    except PrecisionExhausted as exc:
        raise NonGenericPoint(str(exc)) from exc


def chi_decomp(D: SignedDecomposition, x, y) -> int:
    return sum(c * chi_B(B, x, y) for B, c in D.terms)


def face_inclusion(B: ConeBasis) -> tuple[bool, ...]:
    """For y with every Tr(f_i y) > 0: is the face x_i = 0 part of the half-open cone C_B(y)?"""
    def fn(be):
        n = B.n
        cols = B.columns(be)
        rows = lambda cs: [[cs[k][j] for k in range(n)] for j in range(n)]
        dsign = be.sign(det_generic(rows(cols)))
        e_n = [be.const(0)] * (n - 1) + [be.const(1)]
        out = []
        for i in range(n):
            mod = [e_n if k == i else cols[k] for k in range(n)]
            di = dsign * be.sign(det_generic(rows(mod)))
            if di == 0:
                raise DegenerateBasis("e_n lies on a face hyperplane (basis not in U)")
            out.append(di > 0)
        return tuple(out)

    return _run(B.field, B.n, fn)

def chi_at_zero(B: ConeBasis, y) -> int:
    """chi_B(0, y) via the dual-cone description.

    Each f_i is first re-signed so that e_n lies in the cone they span; then
    the value is sign(det) when every Tr(f_i y) is positive, else 0.
    """
    def fn(be):
        n = B.n
        cols = B.columns(be)
        yv = to_point(be, y)
        e_n = [be.const(0)] * (n - 1) + [be.const(1)]
        rows = lambda cs: [[cs[k][j] for k in range(n)] for j in range(n)]
        dsign = be.sign(det_generic(rows(cols)))
        flips = []
        for i in range(n):
            mod = [e_n if k == i else cols[k] for k in range(n)]
            di = be.sign(det_generic(rows(mod))) * dsign
            if di == 0:
                raise DegenerateBasis("e_n lies on a face hyperplane")
            flips.append(di)
        sgn = dsign
        for i in range(n):
            sgn *= flips[i]
            t = be.sign(_dot(cols[i], yv))
            if t == 0:
                raise OnForbiddenHyperplane(f"Tr(f_{i + 1} y) = 0")
            if t * flips[i] < 0:
                return 0
        return sgn

    try:
        return _run(B.field, B.n, fn)
    except PrecisionExhausted as exc:
        raise NonGenericPoint(str(exc)) from exc


def chi_std(x, y, field: NumberField | None = None) -> int:
    """Perturbed indicator of the orthant family, weighted by sign N(y)."""
    def fn(be):
        xv, yv = to_point(be, x), to_point(be, y)
        n = len(yv)
        sy = [be.sign(c) for c in yv]
        if 0 in sy:
            raise ZeroCoordinateY("y has a zero coordinate")
        sx = [be.sign(c) for c in xv]
        for i in range(n - 1):
            if sx[i] * sy[i] <= 0:
                return 0
        if not (sx[-1] * sy[-1] > 0 or (sx[-1] == 0 and sy[-1] > 0)):
            return 0
        return math.prod(sy)

    n = field.n if field is not None else len(list(y))
    return _run(field, n, fn)



@dataclass
class PartitionReport:
    trials: int
    failures: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"trials": self.trials, "failures": len(self.failures), "ok": self.ok}


def sign_pattern_points(B: ConeBasis) -> list:
    """One y per sign pattern s with sign Tr(f_i y) = s_i, built from the dual basis."""
    Bd = B.dual().items
    n = B.n
    out = []
    for s in product((1, -1), repeat=n):
        if B.elements is not None:
            out.append(sum((f * si for f, si in zip(Bd, s)), B.field.zero))
        else:
            out.append(tuple(sum(si * f[j] for f, si in zip(Bd, s)) for j in range(n)))
    return out


def partition_check(B: ConeBasis, trials: int = 1000, rng: random.Random | None = None,
                    size: int = 60) -> PartitionReport:
    """For random rational x, exactly one of the 2^n sign-flipped cones contains x."""
    rng = rng or random.Random(0)
    ys = sign_pattern_points(B)
    fails = []
    for _ in range(trials):
        x = [Fraction(rng.randint(-size, size), rng.randint(1, size)) for _ in range(B.n)]
        tot = sum(abs(chi_B(B, x, y)) for y in ys)
        if tot != 1:
            fails.append((x, tot))
    return PartitionReport(trials, fails)

# ---------------------------------------------------------------- truncation

def _entries_and_minors(B: ConeBasis, prec: int = 64):
    be = _Balls(B.field, B.n, prec)
    cols = B.columns(be)
    n = B.n
    rows = [[cols[i][j] for i in range(n)] for j in range(n)]
    entries = [rows[j][i].abs() for i in range(n) for j in range(n)]
    minors = []
    for k in range(1, n + 1):
        for R in combinations(range(n), k):
            for C in combinations(range(n), k):
                minors.append(det_generic([[rows[r][c] for c in C] for r in R]).abs())
    return entries, minors


def c_constant(B: ConeBasis, safe: bool = False) -> Fraction:
    """Upper bound for the support constant c(B).

    ``safe=False`` gives (d0^(n-1) d1 (1 + n d0))^2 as stated; ``safe=True``
    adds the n! from Cramer's rule and uses max(d0, 1), which the bound's
    derivation actually needs.
    """
    entries, minors = _entries_and_minors(B)
    if any(m.sign() is None for m in minors):
        raise DegenerateBasis("a minor is not certified nonzero")
    n = B.n
    d0 = max(_up(e) for e in entries)
    d1 = max(_up(m.inverse()) for m in minors)
    if safe:
        return (math.factorial(n) * max(d0, 1) ** (n - 1) * d1 * (1 + n * d0)) ** 2
    return (d0 ** (n - 1) * d1 * (1 + n * d0)) ** 2


def _up(b: RealBall) -> Fraction:
    """Rational upper endpoint of a ball."""
    from mpmath import libmp

    return Fraction(*libmp.to_rational(b.hi))


def _ratio_sup(v: Sequence[Fraction], euclid: bool) -> Fraction:
    if any(c == 0 for c in v):
        raise ZeroCoordinateY("point has a zero coordinate")
    nrm2 = sum(c * c for c in v) if euclid else max(c * c for c in v)
    return max(nrm2 / (c * c) for c in v)


def truncation_radius(B: ConeBasis, x, y, safe: bool = False) -> Fraction:
    """R with: chi_{vB}(x,y) != 0 implies ||v|| < R or ||v^-1|| < R (sup norm on v)."""
    xv = [to_fraction(c) for c in x]
    yv = [to_fraction(c) for c in y]
    c = max(c_constant(B, safe), c_constant(B.dual(), safe))
    return c * max(_ratio_sup(xv, safe), _ratio_sup(yv, safe))


def enumeration_bound(U: UnitSystem, R) -> int:
    """K such that every v in V with min(||v||, ||v^-1||) < R has all |k_i| <= K."""
    F = U.field
    n = F.n
    if n == 1:
        return 0
    L = [[float(b.mid) for b in log_vector(e, 64)[: n - 1]] for e in U.etas]  # rows: etas
    Lt = [[L[i][j] for i in range(n - 1)] for j in range(n - 1)]
    Li = inverse([[Fraction(x) for x in r] for r in Lt])
    norm_inf = max(sum(abs(float(x)) for x in r) for r in Li)
    logR = math.log(float(R)) if R > 1 else 0.0
    return int(math.floor((n - 1) * norm_inf * logR * 1.000001)) + 1


def _apply_unit(be, v: FieldElement, pt: list) -> list:
    ev = be.embed(v)
    return [a * b for a, b in zip(ev, pt)]


@dataclass
class ShintaniSumReport:
    total: int
    expected: int
    equal: bool
    K: int
    support: list
    radius_nominal: Fraction | None
    radius_safe: Fraction | None
    inside_shell: bool

    def as_dict(self) -> dict:
        return {
            "sum": self.total,
            "chi_std": self.expected,
            "equal": self.equal,
            "K": self.K,
            "support": [list(k) for k in self.support],
            "inside_shell": self.inside_shell,
        }


def shintani_sum_check(D: SignedDecomposition, U: UnitSystem, x, y, K: int | None = None) -> ShintaniSumReport:
    """Truncated sum over v in V of chi_{vD}(x, y), against chi_std(x, y).

    No extra N(v) weight: each term is N(v) chi_D(v^-1 x, v y). The two forms
    only differ when V contains units of norm -1.
    """
    F = U.field
    n = F.n
    xv = [to_fraction(c) for c in x]
    yv = [to_fraction(c) for c in y]
    if any(c == 0 for c in yv) or any(c == 0 for c in xv):
        raise ZeroCoordinateY("x and y must have nonzero coordinates")
    R_nominal = max(truncation_radius(B, xv, yv, safe=False) for B in D.bases()) if n > 1 else None
    R_safe = max(truncation_radius(B, xv, yv, safe=True) for B in D.bases()) if n > 1 else None
    if K is None:
        K = enumeration_bound(U, R_safe) if n > 1 else 0
    expected = chi_std(xv, yv, F)
    total = 0
    support = []
    inside = True

    def term(be, v: FieldElement):
        vinv = v.inverse()
        xs = _apply_unit(be, vinv, to_point(be, xv))
        ys = _apply_unit(be, v, to_point(be, yv))
        Nv = int(v.norm())
        # chi_{vD}(x, y) = N(v) chi_D(v^-1 x, v y)
        return sum(c * Nv * _chi_core(B, be, xs, ys) for B, c in D.terms)

    for ks, v in U.enumerate(K):
        try:
            t = _run(F, n, lambda be: term(be, v))
        except PrecisionExhausted as exc:
            raise NonGenericPoint(str(exc)) from exc
        except OnForbiddenHyperplane as exc:
            raise NonGenericPoint(str(exc)) from exc
        if t:
            total += t
            support.append(ks)
            if n > 1 and max(abs(k) for k in ks) == K:
                raise TruncationInsufficient(f"nonzero term on the boundary shell |k| = {K}")
            if n > 1:
                vn = max(abs(float(e.mid)) for e in v.embeddings(64))
                vin = max(abs(float(e.mid)) for e in v.inverse().embeddings(64))
                if not (vn < R_nominal or vin < R_nominal):
                    inside = False
    return ShintaniSumReport(total, expected, total == expected, K, support, R_nominal, R_safe, inside)


# ---------------------------------------------------------------- regulator

@dataclass
class RegulatorReport:
    reg_V: RealBall
    reg_UF: RealBall
    index: int
    totally_positive: bool
    note: str

    def as_dict(self) -> dict:
        return {
            "Reg(V)": str(self.reg_V),
            "Reg(U_F)": str(self.reg_UF),
            "index": self.index,
            "totally_positive": self.totally_positive,
            "note": self.note,
        }


def regulator(U: UnitSystem, prec: int = DEFAULT_PREC) -> RegulatorReport:
    """Reg(V) = (1/n)|det(1, Log eta_1, ..., Log eta_{n-1})| and Reg(U_F) = Reg(V)/[U_F:V].

    For F = Q the convention Reg(V) = 1 for the trivial V, so Reg(U_Q) = 1/2.
    """
    F = U.field
    n = F.n
    if n == 1:
        one = RealBall.exact(1, prec)
        return RegulatorReport(one, one / U.index, U.index, True, "trivial lattice")
    cols = [[RealBall.exact(1, prec)] * n] + [log_vector(e, prec) for e in U.etas]
    rows = [[cols[i][j] for i in range(n)] for j in range(n)]
    rv = det_generic(rows).abs() / n
    tp = all(e.is_totally_positive() for e in U.etas)
    note = "domain taken in the positive orthant component"
    if not tp:
        note += "; V is not totally positive"
    return RegulatorReport(rv, rv / U.index, U.index, tp, note)


@dataclass
class ConeVolumeReport:
    lhs: mpmath.mpf
    rhs: mpmath.mpf
    difference: mpmath.mpf

    def as_dict(self):
        return {"signed_measure": mpmath.nstr(self.lhs, 15), "det_formula": mpmath.nstr(self.rhs, 15),
                "difference": mpmath.nstr(self.difference, 3)}


def cone_volume_identity_check(U: UnitSystem, dps: int = 30) -> ConeVolumeReport:
    """Signed hyperbola-section measure of the cones vs (1/n) det(1, Log eta)."""
    F = U.field
    n = F.n
    if n == 1:
        z = mpmath.mpf(0)
        return ConeVolumeReport(z, z, z)
    if n != 2:
        raise InputError("cone-volume identity is implemented for n = 2")
    if not all(e.is_totally_positive() for e in U.etas):
        raise NotTotallyPositive("cones must lie in the positive quadrant")
    D = sigma_decomposition(U)
    with mpmath.workdps(dps):
        lhs = mpmath.mpf(0)
        for (B, _c), sigma in zip(D.terms, permutations(range(n - 1))):
            # intersection of each spanning ray with y1*y2 = 1, parametrised by y1
            ends = []
            for f in B.elements:
                w1, w2 = (mpmath.mpf(e.mid) for e in f.embeddings(dps * 4))
                ends.append(mpmath.sqrt(w1 / w2))
            a, b = sorted(ends)
            meas = mpmath.quad(lambda t: 1 / t, [a, b])
            lhs += _perm_sign(sigma) * B.det_sign() * meas
        eta = U.etas[0]
        l1, l2 = (mpmath.mpf(b.mid) for b in log_vector(eta, dps * 4))
        rhs = (l2 - l1) / n
        return ConeVolumeReport(lhs, rhs, abs(lhs - rhs))
