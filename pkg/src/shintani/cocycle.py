"""Chains of projective points and the rational cocycle g_B.

g_B(z) = det B / (Tr(f_1 z) ... Tr(f_n z)) is unchanged when any f_i is
rescaled, so tuples are stored as primitive integer vectors.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import mpmath

from .cones import ConeBasis, NonGenericPoint, OnForbiddenHyperplane, SignedDecomposition, chi_B
from .errors import DegenerateBasis, DegenerateTuple, InputError, PoleAtEvaluationPoint
from .field import UnitSystem
from .kernel.ball import RealBall
from .kernel.linalg import det, inverse, to_fraction


def rational_point(v: Sequence) -> tuple[int, ...]:
    """Primitive integer representative with first nonzero coordinate positive."""
    q = [to_fraction(c) for c in v]
    if all(c == 0 for c in q):
        raise InputError("the zero vector is not a projective point")
    den = math.lcm(*(c.denominator for c in q))
    ints = [int(c * den) for c in q]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    if next(c for c in ints if c) < 0:
        ints = [-c for c in ints]
    return tuple(ints)


class Chain:
    """Finite Z-combination of m-tuples of projective points."""

    def __init__(self, terms: Mapping | Iterable = (), m: int | None = None):
        acc: dict[tuple, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for tup, c in items:
            key = tuple(rational_point(p) for p in tup)
            acc[key] += int(c)
        self.terms = {k: c for k, c in acc.items() if c}
        arities = {len(k) for k in self.terms}
        if len(arities) > 1:
            raise InputError("mixed arities in chain")
        self.m = arities.pop() if arities else (m or 0)

    @classmethod
    def simplex(cls, points: Sequence) -> "Chain":
        return cls([(tuple(points), 1)])

    def __add__(self, other: "Chain") -> "Chain":
        return Chain(list(self.terms.items()) + list(other.terms.items()), self.m)

    def __neg__(self) -> "Chain":
        return Chain([(k, -c) for k, c in self.terms.items()], self.m)

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __rmul__(self, a: int) -> "Chain":
        return Chain([(k, a * c) for k, c in self.terms.items()], self.m)

    def __eq__(self, other):
        return isinstance(other, Chain) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Chain({self.terms})"

    def to_records(self) -> list[dict]:
        return [{"coefficient": c, "points": [list(p) for p in k]} for k, c in sorted(self.terms.items())]


def boundary(c: Chain) -> Chain:
    if c.m < 1:
        raise InputError("boundary needs arity >= 1")
    out = []
    for tup, coef in c.terms.items():
        for i in range(len(tup)):
            face = tup[:i] + tup[i + 1:]
            if face:
                out.append((face, (-1) ** i * coef))
    return Chain(out, c.m - 1)


def _dot(f, z):
    return sum(a * b for a, b in zip(f, z))


def g_term(B: Sequence[Sequence], z: Sequence) -> Fraction:
    n = len(B)
    if n != len(z):
        raise InputError("dimension mismatch")
    den = Fraction(1)
    for f in B:
        t = _dot([Fraction(a) for a in f], z)
        if t == 0:
            raise PoleAtEvaluationPoint(f"Tr(f z) = 0 for f = {tuple(f)}")
        den *= t
    return det([[Fraction(B[i][j]) for i in range(n)] for j in range(n)]) / den


def g_eval(c: Chain, z: Sequence) -> Fraction:
    zq = [to_fraction(x) for x in z]
    return sum((coef * g_term(tup, zq) for tup, coef in c.terms.items()), Fraction(0))


@dataclass
class CocycleReport:
    trials: int
    zeros: int
    degree: int
    sample_range: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.zeros == self.trials

    def confidence_note(self) -> str:
        # after clearing the product of all linear forms the identity is a
        # polynomial of the reported degree; a nonzero one vanishes at a
        # uniform sample with probability <= degree / range
        p = (self.degree / self.sample_range) ** self.trials
        return f"cleared degree {self.degree}, range {self.sample_range}: false-pass probability <= {p:.3g}"

    def as_dict(self) -> dict:
        return {"trials": self.trials, "zeros": self.zeros, "ok": self.ok, "note": self.confidence_note()}


def _check_tuple(points: Sequence[Sequence]) -> list[tuple[int, ...]]:
    pts = [rational_point(p) for p in points]
    n = len(pts[0])
    if len(pts) != n + 1 or any(len(p) != n for p in pts):
        raise DegenerateTuple(f"need n + 1 points in Q^n, got {len(pts)}")
    for i in range(n + 1):
        face = pts[:i] + pts[i + 1:]
        if det([[Fraction(face[a][b]) for a in range(n)] for b in range(n)]) == 0:
            raise DegenerateTuple(f"face {i} is not a basis")
    return pts


def cocycle_check(points: Sequence[Sequence], trials: int = 20, rng: random.Random | None = None,
                  sample_range: int = 10**6) -> CocycleReport:
    """g of the boundary of an (n+1)-tuple vanishes identically."""
    rng = rng or random.Random(0)
    pts = _check_tuple(points)
    n = len(pts[0])
    chain = boundary(Chain.simplex(pts))
    zeros, failures, done = 0, [], 0
    while done < trials:
        z = [Fraction(rng.randint(-sample_range, sample_range), rng.randint(1, 97)) for _ in range(n)]
        try:
            val = g_eval(chain, z)
        except PoleAtEvaluationPoint:
            continue
        done += 1
        if val == 0:
            zeros += 1
        else:
            failures.append((z, val))
    return CocycleReport(trials, zeros, 1, 2 * sample_range + 1, failures)


@dataclass
class ChiCocycleReport:
    trials: int
    zeros: int
    skipped: int
    failures: list

    @property
    def ok(self) -> bool:
        return self.zeros == self.trials

    def as_dict(self) -> dict:
        return {"trials": self.trials, "zeros": self.zeros, "skipped": self.skipped, "ok": self.ok}


def chi_cocycle_check(points: Sequence[Sequence], trials: int = 100, rng: random.Random | None = None) -> ChiCocycleReport:
    """sum_i (-1)^i chi_{B_i}(x, y) = 0, B_i the face omitting point i."""
    rng = rng or random.Random(0)
    pts = _check_tuple(points)
    n = len(pts[0])
    faces = []
    for i in range(n + 1):
        try:
            faces.append(ConeBasis(pts[:i] + pts[i + 1:]).require_U())
        except DegenerateBasis as exc:
            raise DegenerateTuple(str(exc)) from exc
    zeros = skipped = 0
    failures = []
    done = 0
    while done < trials:
        x = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
        y = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
        try:
            s = sum((-1) ** i * chi_B(B, x, y) for i, B in enumerate(faces))
        except (OnForbiddenHyperplane, NonGenericPoint):
            skipped += 1
            continue
        done += 1
        if s == 0:
            zeros += 1
        else:
            failures.append((x, y, s))
    return ChiCocycleReport(trials, zeros, skipped, failures)


def chain_dual(c: Chain) -> Chain:
    """Termwise trace-dual bases (rows of the inverse of the column matrix)."""
    out = []
    for tup, coef in c.terms.items():
        n = len(tup)
        M = [[Fraction(tup[i][j]) for i in range(n)] for j in range(n)]
        if det(M) == 0:
            raise DegenerateTuple("term is not a basis")
        Mi = inverse(M)
        out.append((tuple(tuple(Mi[i]) for i in range(n)), coef))
    return Chain(out, c.m)


@dataclass
class NormIdentityReport:
    residuals: dict
    target: mpmath.mpf

    @property
    def decreasing(self) -> bool:
        vals = [self.residuals[k] for k in sorted(self.residuals)]
        return all(a > b for a, b in zip(vals, vals[1:]))

    def as_dict(self) -> dict:
        return {"residuals": {k: mpmath.nstr(v, 5) for k, v in sorted(self.residuals.items())},
                "decreasing": self.decreasing}


def norm_identity_check(D: SignedDecomposition, U: UnitSystem, z: Sequence, K: int | Sequence[int] = 6,
                        prec: int = 192) -> NormIdentityReport:
    """Residuals |sum_{|k|<=K} g_{vD}(z) - 1/N(z)| for K, K+2, K+4 (or the given list)."""
    F = U.field
    n = F.n
    Ks = [K, K + 2, K + 4] if isinstance(K, int) else list(K)
    zb = [RealBall.exact(to_fraction(c), prec) for c in z]
    Nz = zb[0]
    for c in zb[1:]:
        Nz = Nz * c
    if Nz.sign() is None:
        raise PoleAtEvaluationPoint("N(z) = 0")
    target = 1 / Nz
    cols = {}
    for B, _c in D.terms:
        cols[B] = [f.embeddings(prec) for f in B.elements]
    dets = {}
    from .kernel.linalg import det_generic

    for B in cols:
        dets[B] = det_generic([[cols[B][i][j] for i in range(n)] for j in range(n)])

    def term(ks) -> RealBall:
        v = U.element(ks)
        ve = v.embeddings(prec)
        Nv = int(v.norm())
        acc = RealBall.exact(0, prec)
        for B, c in D.terms:
            den = RealBall.exact(1, prec)
            for f in cols[B]:
                t = sum((fj * vj * zj for fj, vj, zj in zip(f, ve, zb)), RealBall.exact(0, prec))
                if t.sign() is None:
                    raise PoleAtEvaluationPoint(f"Tr(v f z) not separated from 0 at k = {ks}")
                den = den * t
            acc = acc + dets[B] * Nv * c / den
        return acc

    residuals = {}
    total = RealBall.exact(0, prec)
    done: set = set()
    from itertools import product

    for K_ in sorted(Ks):
        for ks in product(range(-K_, K_ + 1), repeat=U.rank):
            if ks not in done:
                done.add(ks)
                total = total + term(ks)
        residuals[K_] = abs(total.mid - target.mid)
    return NormIdentityReport(residuals, target.mid)
