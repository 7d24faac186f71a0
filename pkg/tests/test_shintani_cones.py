import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from shintani import presets
from shintani.cones import (
    ConeBasis,
    SignedDecomposition,
    c_constant,
    chi_B,
    chi_decomp,
    chi_std,
    cone_volume_identity_check,
    dual_decomposition,
    is_effective,
    partition_check,
    regulator,
    shintani_sum_check,
    sigma_decomposition,
    truncation_radius,
)
from shintani.errors import DegenerateBasis, InputError, NonGenericPoint, OnForbiddenHyperplane
from shintani.field import UnitSystem
from support import quadratic_setup

GOLD = presets.quadratic_field(5)
th = GOLD.theta


def test_sigma_decomposition_golden():
    U = presets.unit_group(GOLD)
    D = sigma_decomposition(U)
    assert len(D.terms) == 1
    B, c = D.terms[0]
    assert c == 1 and B.elements == (GOLD.one, th)
    assert is_effective(D)
    inv = sigma_decomposition(UnitSystem(GOLD, (th.inverse(),), 2))
    assert inv.terms[0][1] == -1


def test_rational_decomposition():
    F = presets.rational_field()
    D = sigma_decomposition(presets.unit_group(F))
    assert [(B.elements, c) for B, c in D.terms] == [((F.one,), 1)]
    assert dual_decomposition(D).terms[0][0].elements == (F.one,)


def test_chi_std_values():
    assert chi_std([1, 1], [1, 1]) == 1
    assert chi_std([1, 0], [1, 1]) == 1
    assert chi_std([1, 1], [1, -1]) == 0
    assert chi_std([-1, -1], [-1, -1]) == 1
    assert chi_std([1, -2], [1, -1]) == -1


def test_chi_B_basics():
    E = ConeBasis([[1, 0], [0, 1]])
    assert chi_B(E, [1, 1], [1, 1]) == 1
    assert chi_B(E, [-1, 1], [1, 1]) == 0
    assert chi_B(ConeBasis([[1]]), [3], [2]) == 1
    with pytest.raises(OnForbiddenHyperplane):
        chi_B(E, [1, 1], [0, 1])
    with pytest.raises(DegenerateBasis):
        ConeBasis([[1, 2], [2, 4]])


def test_decomposition_algebra():
    U = presets.unit_group(GOLD)
    D = sigma_decomposition(U)
    x, y = [1, 1], [1, 1]
    assert chi_decomp(D, x, y) in (-1, 0, 1)
    assert chi_decomp(D + (-D), x, y) == 0
    assert chi_decomp(D, x, y) == chi_B(D.terms[0][0], x, y)
    assert shintani_sum_check(D, U, x, y).equal


def test_records_roundtrip():
    D = sigma_decomposition(presets.unit_group(GOLD))
    back = SignedDecomposition.from_records(D.to_records(), GOLD)
    assert [(B.elements, c) for B, c in back.terms] == [(B.elements, c) for B, c in D.terms]


def test_c_constant():
    assert c_constant(ConeBasis([[1, 1], [1, -1]])) == 9
    B = ConeBasis([[1, 1], [1, -1]])
    assert truncation_radius(B, [1, 1], [1, 1]) == truncation_radius(B, [5, 5], [1, 1])
    assert truncation_radius(B, [1, 1], [1, 1]) == 9


def test_biduality():
    D = sigma_decomposition(presets.unit_group(GOLD))
    dd = dual_decomposition(dual_decomposition(D))
    for (B1, c1), (B2, c2) in zip(D.terms, dd.terms):
        assert c1 == c2
        for f, g in zip(B1.elements, B2.elements):
            r = f * g.inverse()
            assert r.is_rational() and r.rational() > 0
    E = ConeBasis([[1, 0], [0, 1]])
    assert E.dual().vectors == E.vectors


def test_dual_basis_pairing():
    B = ConeBasis([[1, 1], [1, -1]])
    Bd = B.dual()
    pair = [[sum(a * b for a, b in zip(f, g)) for g in Bd.vectors] for f in B.vectors]
    assert all(pair[i][j] == 0 for i in range(2) for j in range(2) if i != j)
    assert all(pair[i][i] > 0 for i in range(2))


def test_regulator_golden():
    F, U, _ = quadratic_setup(5, totally_positive=True)
    r = regulator(U)
    assert U.index == 4
    assert abs(float(r.reg_V.mid) - 0.9624236501192069) < 1e-15
    assert abs(float(r.reg_UF.mid) - 0.2406059125298017) < 1e-15
    flipped = UnitSystem(F, (U.etas[0].inverse(),), 4, True)
    assert abs(regulator(flipped).reg_V.mid - r.reg_V.mid) < 1e-30


@pytest.mark.parametrize("D", [5, 8, 13])
def test_cone_volume(D):
    F, U, _ = quadratic_setup(D, totally_positive=True)
    r = cone_volume_identity_check(U)
    assert r.difference < 1e-9
    assert abs(r.rhs - regulator(U).reg_V.mid) < 1e-12


def test_partition_check_bases():
    rng = random.Random(3)
    for D in (12, 13):
        _, U, Dec = quadratic_setup(D)
        for B in Dec.bases() + dual_decomposition(Dec).bases():
            assert partition_check(B, 200, rng).ok


@pytest.mark.parametrize("D", [8, 12, 13])
def test_shintani_sum_other_fields(D):
    rng = random.Random(D)
    _, U, Dec = quadratic_setup(D)
    for _ in range(15):
        x = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 30), rng.randint(1, 7)) for _ in range(2)]
        y = [Fraction(rng.choice((-1, 1)) * rng.randint(1, 30), rng.randint(1, 7)) for _ in range(2)]
        try:
            assert shintani_sum_check(Dec, U, x, y).equal
        except NonGenericPoint:
            continue


def test_tampered_decomposition_fails_sum():
    _, U, Dec = quadratic_setup(5)
    bad = SignedDecomposition(tuple((B, -c) for B, c in Dec.terms), Dec.field)
    assert not shintani_sum_check(bad, U, [1, 1], [1, 1]).equal


nz = st.fractions(-20, 20, max_denominator=7).filter(lambda q: q != 0)
vec2 = st.lists(nz, min_size=2, max_size=2)


def _basis(rows):
    try:
        return ConeBasis(rows).require_U()
    except (DegenerateBasis, InputError):
        return None


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=2, max_size=2), vec2, vec2)
def test_chi_invariances(rows, x, y):
    B = _basis(rows)
    assume(B is not None)
    try:
        v = chi_B(B, x, y)
    except (OnForbiddenHyperplane, NonGenericPoint):
        assume(False)
    assert v in (-1, 0, 1)
    # negating a generator and rescaling by positive constants leave chi unchanged
    neg = ConeBasis([[-c for c in rows[0]], rows[1]])
    big = ConeBasis([[3 * c for c in rows[0]], rows[1]])
    assert chi_B(neg, x, y) == v == chi_B(big, x, y)
    # homogeneity in x and y separately
    assert chi_B(B, [2 * c for c in x], [Fraction(1, 3) * c for c in y]) == v


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=2, max_size=2))
def test_partition_property(rows):
    B = _basis(rows)
    assume(B is not None)
    assert partition_check(B, 30, random.Random(0)).ok
