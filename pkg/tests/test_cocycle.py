import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from shintani.cocycle import (
    Chain,
    boundary,
    chain_dual,
    chi_cocycle_check,
    cocycle_check,
    g_eval,
    g_term,
    norm_identity_check,
    rational_point,
)
from shintani.errors import DegenerateTuple, InputError, PoleAtEvaluationPoint
from support import quadratic_setup


def test_boundary_of_edge_and_triangle():
    e = Chain.simplex([(1, 0), (0, 1)])
    assert boundary(e) == Chain([(((0, 1),), 1), (((1, 0),), -1)])
    t = Chain.simplex([(1, 0), (0, 1), (1, 1)])
    assert not boundary(boundary(t))


def test_projective_normalization():
    assert rational_point([Fraction(-2, 3), 4]) == (1, -6)
    assert Chain.simplex([(2, 0)]) == Chain.simplex([(5, 0)])


def test_g_values():
    assert g_term([[2]], [3]) == Fraction(1, 3) == g_term([[1]], [3])
    assert g_term([[1, 0], [0, 1]], [2, 3]) == Fraction(1, 6)
    assert g_eval(Chain.simplex([(1,)]), [Fraction(7, 2)]) == Fraction(2, 7)
    with pytest.raises(PoleAtEvaluationPoint):
        g_term([[1, 0], [0, 1]], [0, 3])


def test_one_dimensional_cocycle_is_trivial():
    c = boundary(Chain.simplex([(2,), (5,)]))
    assert not c  # both faces are the same projective point
    assert g_eval(c, [3]) == 0


def test_cocycle_small_triangle():
    r = cocycle_check([(1, 0), (0, 1), (1, 1)], trials=20)
    assert r.ok and r.trials == 20
    assert "false-pass probability" in r.confidence_note()


def test_cocycle_five_points_in_the_plane():
    # g of the boundary of every 3-subset vanishes; sum them as a larger chain
    pts = [(1, 0), (0, 1), (1, 1), (2, -1), (1, 3)]
    rng = random.Random(0)
    z = [Fraction(7, 3), Fraction(-5, 11)]
    for i in range(5):
        for j in range(i + 1, 5):
            for k in range(j + 1, 5):
                assert g_eval(boundary(Chain.simplex([pts[i], pts[j], pts[k]])), z) == 0
    assert cocycle_check(pts[:3], 5, rng).ok


def test_degenerate_tuples():
    with pytest.raises(DegenerateTuple):
        cocycle_check([(1, 0), (1, 0), (0, 1)])
    with pytest.raises(DegenerateTuple):
        cocycle_check([(1, 0), (0, 1)])


def test_chi_cocycle():
    pts = [(1, 2), (3, -1), (-2, 5)]
    assert chi_cocycle_check(pts, 100, random.Random(1)).ok
    neg = [tuple(-c for c in p) for p in pts]
    assert chi_cocycle_check(neg, 100, random.Random(1)).ok


def test_chain_dual():
    std = Chain.simplex([(1, 0), (0, 1)])
    assert chain_dual(std) == std
    c = Chain.simplex([(1, 1), (1, -1)])
    assert chain_dual(chain_dual(c)) == c
    (tup, _), = chain_dual(c).terms.items()
    M = [(1, 1), (1, -1)]
    for i, f in enumerate(tup):
        for j, g in enumerate(M):
            dot = sum(a * b for a, b in zip(f, g))
            assert (dot == 0) == (i != j)


def test_norm_identity_golden():
    _, U, Dec = quadratic_setup(5, totally_positive=True)
    r = norm_identity_check(Dec, U, (1, 2), [6, 8, 10])
    assert r.decreasing
    assert r.residuals[10] < 1e-6
    assert abs(r.target - 0.5) < 1e-30


pt = st.tuples(st.integers(-12, 12), st.integers(-12, 12), st.integers(-12, 12))


@settings(max_examples=40, deadline=None)
@given(st.lists(pt, min_size=4, max_size=4))
def test_cocycle_property_dimension_three(points):
    try:
        r = cocycle_check(points, 5, random.Random(0))
    except InputError:  # zero vector or dependent faces
        assume(False)
    assert r.ok


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-12, 12), st.integers(-12, 12)), min_size=3, max_size=3))
def test_chi_cocycle_property(points):
    try:
        r = chi_cocycle_check(points, 20, random.Random(0))
    except InputError:  # zero vector or dependent faces
        assume(False)
    assert r.ok
