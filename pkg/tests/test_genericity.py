from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_cusp.errors import DepthMismatch, GE0Failed
from padic_cusp.genericity import (DualElement, char_depth, default_varpi, dual_agrees, ge0, ge1_check,
                                   ge2_check, ge2_from_residues, is_generic_character, root_valuations,
                                   weyl_stabilizer)
from padic_cusp.local_field import INF
from padic_cusp.tori import (LogCharacter, TorusDescriptor, quadratic_form_character, split_character,
                             trivial_character)

TORUS = TorusDescriptor.split("GL", 2, 7, 6)
PSI = LogCharacter(TORUS.base, c=TORUS.base(Fraction(3, 7)))
exponent_pairs = st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(lambda e: (e[0] - e[1]) % 7 or e[0] % 7)
units = st.integers(1, 7 ** 3).filter(lambda n: n % 7)


def dual_of(exponents, psi=PSI):
    return DualElement.of(split_character(TORUS, psi, exponents))


def test_char_depth():
    flagged = char_depth(trivial_character(TORUS))
    assert flagged.depth == 0 and flagged.trivial
    assert char_depth(split_character(TORUS, PSI, (1, 0))).depth == 1
    assert char_depth(split_character(TORUS, PSI, (1, -1))).depth == 1


def test_ge1_examples():
    assert ge1_check(dual_of((1, 0)), 1)
    assert root_valuations(dual_of((1, 0))) == [-1]
    assert not ge1_check(dual_of((1, 1)), 1)
    assert root_valuations(dual_of((1, 1))) == [INF]
    assert not ge1_check(dual_of((1, -6)), 1)
    assert root_valuations(dual_of((1, -6))) == [0]


def test_ge1_needs_ge0():
    with pytest.raises(GE0Failed):
        ge1_check(dual_of((1, 0)), 2)


def test_ge2_examples():
    for exps in ((1, 0), (0, 1), (1, -1)):
        assert ge2_check(dual_of(exps), 1)
    assert not ge2_from_residues([3, 3])
    # A2: reduction fixed by the transposition of the first two coordinates only
    assert len(weyl_stabilizer([2, 2, 5])) == 2
    assert ge2_from_residues([2, 2, 5], blocks=[[0, 1], [2]])
    assert not ge2_from_residues([2, 2, 5])
    assert not ge2_from_residues([2, 2, 2], blocks=[[0, 1], [2]])


def test_generic_characters():
    for exps, generic in (((1, 0), True), ((0, 1), True), ((1, -1), True), ((1, 1), False), ((1, -6), False)):
        assert is_generic_character(split_character(TORUS, PSI, exps)).generic is generic
    torus = TorusDescriptor.elliptic("SL", 7, 7, 6)
    report = is_generic_character(quadratic_form_character(torus, 2))
    assert report.depth == Fraction(1, 2) and report.generic


def test_depth_mismatch():
    with pytest.raises(DepthMismatch):
        is_generic_character(split_character(TORUS, PSI, (1, 0)), 2)


@given(exponent_pairs, units)
def test_unit_scaling_preserves_conditions(exps, unit):
    X = dual_of(exps)
    Y = X.scale(TORUS.base(unit))
    if not ge0(X, 1):
        assert not ge0(Y, 1)
        return
    assert ge0(Y, 1)
    assert ge1_check(X, 1) == ge1_check(Y, 1)
    assert ge2_check(X, 1) == ge2_check(Y, 1)


@given(exponent_pairs, units)
def test_ge2_independent_of_varpi(exps, unit):
    X = dual_of(exps)
    if not ge0(X, 1):
        return
    other = default_varpi(TORUS, 1) * TORUS.field(unit)
    assert ge2_check(X, 1) == ge2_check(X, 1, other)


@given(exponent_pairs)
def test_ge1_implies_ge2_when_p_is_not_torsion(exps):
    X = dual_of(exps)
    if ge0(X, 1) and ge1_check(X, 1):
        assert ge2_check(X, 1)


@given(exponent_pairs)
def test_ge1_invariant_under_weyl_conjugation(exps):
    X, Y = dual_of(exps), dual_of(exps[::-1])
    assert ge0(X, 1) == ge0(Y, 1)
    if ge0(X, 1):
        assert ge1_check(X, 1) == ge1_check(Y, 1)


@given(exponent_pairs, units)
def test_solved_dual_matches_exact_dual(exps, numerator):
    psi = LogCharacter(TORUS.base, c=TORUS.base(Fraction(numerator, 7)))
    theta = split_character(TORUS, psi, exps)
    if char_depth(theta).depth == 1:
        assert dual_agrees(theta, 1)
