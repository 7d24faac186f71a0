"""Exact rational linear algebra and integer normal forms (HNF, SNF)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from ..errors import SingularMatrix

Matrix = list[list]


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and 'a/b' strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot coerce {x!r} to an exact rational")


def frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def lcm_denominators(values) -> int:
    out = 1
    for v in values:
        out = lcm(out, Fraction(v).denominator)
    return out


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(r) for r in zip(*A)]


def identity(n: int, one=1) -> Matrix:
    return [[one if i == j else 0 * one for j in range(n)] for i in range(n)]


def det(A: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by fraction-based Gaussian elimination."""
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            sign = -sign
        piv = M[c][c]
        out *= piv
        for r in range(c + 1, n):
            f = M[r][c] / piv
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return sign * out


def det_generic(A):
    """Determinant by cofactor expansion; works over any commutative ring (small n)."""
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return A[0][0] * A[1][1] - A[0][1] * A[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = A[0][j] * det_generic(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve A x = b exactly; raises SingularMatrix."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * bb for a, bb in zip(M[r], M[c])]
    return [M[i][n] for i in range(n)]


def inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    cols = [solve(A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return transpose(cols)


def rank(rows: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def hnf_rows(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row Hermite normal form of an integer generator matrix of full column rank.

    Returns a square upper-triangular basis of the row lattice with positive
    pivots and entries above each pivot reduced into [0, pivot).
    """
    A = [list(map(int, r)) for r in rows]
    ncols = len(A[0])
    out: Matrix = []
    for c in range(ncols):
        # gcd-combine column c among remaining rows
        while True:
            nz = [i for i, r in enumerate(A) if r[c] != 0]
            if not nz:
                raise SingularMatrix("generators do not span a full-rank lattice")
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            done = True
            for i in nz:
                if i != i0:
                    q = A[i][c] // A[i0][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[i0])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        piv = A.pop(i0)
        if piv[c] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        A = [r for r in A if any(r)]
    for c in range(ncols):
        p = out[c][c]
        for r in range(c):
            q = out[r][c] // p
            if q:
                out[r] = [a - q * b for a, b in zip(out[r], out[c])]
    return out


def smith_normal_form(M: Sequence[Sequence[int]]):
    """Return (U, D, V) with U*M*V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    n = len(M)
    if n == 0 or any(len(r) != n for r in M):
        raise SingularMatrix("SNF expects a square matrix")
    A = [list(map(int, r)) for r in M]
    U = identity(n)
    V = identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in (A, V):
            for r in R:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):  # row dst -= q*row src
        A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst -= q*col src
        for R in (A, V):
            for r in R:
                r[dst] -= q * r[src]

    for t in range(n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j]]
        if not entries:
            raise SingularMatrix("matrix is singular")
        while True:
            _, i, j = min((abs(A[i][j]), i, j) for i in range(t, n) for j in range(t, n) if A[i][j])
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = A[i][t] // p
                if q:
                    add_row(i, t, q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    add_col(j, t, q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)  # pull a non-divisible entry into row t
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return U, A, V
