import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_cusp.building import (BTTriple, Level, apartment_window, conjugate_by_weyl, double_dual,
                                 dual_lattice, exponent_table, generator_product, jump_set,
                                 lie_exponent_table, mat_inverse, mat_mul, mp_exponent,
                                 mp_lie_isomorphism_check, mp_membership, parabolic_image_check,
                                 points_equivalent, quotient_dim, sl2_tree, to_field_matrix,
                                 torus_filtration, tree_apartment, tree_is_thick, tree_is_thin)
from padic_cusp.local_field import LocalFieldDesc
from padic_cusp.tori import TorusDescriptor

ALPHA, NEG_ALPHA = (1, -1), (-1, 1)
X1 = BTTriple.sl(2)
X2 = BTTriple.sl(2, (Fraction(1, 4), Fraction(-1, 4)))
Q7 = LocalFieldDesc.qp(7, 3)
seeds = st.integers(0, 10 ** 6)
levels = st.sampled_from([Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2)])


def test_exponents():
    assert mp_exponent(X1, ALPHA, 0) == 0
    assert mp_exponent(X2, ALPHA, Fraction(1, 2)) == 0
    assert mp_exponent(X2, NEG_ALPHA, Fraction(1, 2)) == 1
    assert mp_exponent(X2, ALPHA, 0) == 0
    assert mp_exponent(X2, NEG_ALPHA, 0) == 1


def test_membership_examples():
    g = to_field_matrix(Q7, [[8, 1], [7, Fraction(1 + 7, 8)]])
    assert mp_membership(g, X2, Fraction(1, 2))
    identity = to_field_matrix(Q7, [[1, 0], [0, 1]])
    for x in (X1, X2):
        for r in (0, Fraction(1, 2), 2):
            assert mp_membership(identity, x, r)
    lower = to_field_matrix(Q7, [[1, 0], [7, 1]])
    assert mp_membership(lower, X2, Fraction(1, 2))
    assert not mp_membership(lower, X2, "1/2+")


def test_jump_sets():
    assert jump_set(X1, 2) == [1, 2]
    assert jump_set(X2, 2) == [Fraction(1, 2), 1, Fraction(3, 2), 2]
    barycenter = BTTriple.sl(3, (Fraction(1, 3), 0, Fraction(-1, 3)))
    assert jump_set(barycenter, 1) == [Fraction(1, 3), Fraction(2, 3), 1]


def test_quotient_dimensions():
    assert quotient_dim(X2, Fraction(1, 2)) == 2
    assert quotient_dim(X1, Fraction(1, 2)) == 0
    assert quotient_dim(X1, 1) == 3


def test_moy_prasad_isomorphism():
    assert mp_lie_isomorphism_check(X2, Fraction(1, 2), 7, sample_count=50, precision=4)
    assert mp_lie_isomorphism_check(X1, 1, 7, sample_count=50, precision=4)
    with pytest.raises(ValueError):
        mp_lie_isomorphism_check(X1, 0, 7)


def test_dual_lattice():
    assert dual_lattice(X1, 0) == [[0, 0], [0, 0]]
    for x in (X1, X2):
        for r in (0, Fraction(1, 2), 1, Fraction(3, 2)):
            assert double_dual(x, r) == lie_exponent_table(x, r)


@given(st.sampled_from([X1, X2, BTTriple.sl(3, (Fraction(1, 3), 0, Fraction(-1, 3)))]),
       st.fractions(min_value=0, max_value=3, max_denominator=6))
def test_levels_differ_from_their_plus_exactly_at_jumps(x, r):
    differs = exponent_table(x, Level(r)) != exponent_table(x, Level(r, True))
    assert differs == (r in jump_set(x, 3) or r == 0)


def test_points_equivalent():
    gl_point = BTTriple.gl(2, (Fraction(1, 4), Fraction(-1, 4)))
    assert points_equivalent(gl_point, gl_point.translate((Fraction(1, 2), Fraction(1, 2))))
    assert not points_equivalent(X1, X2)
    assert points_equivalent(X2, X2)


def test_apartment_windows():
    line = X1.root_system
    assert len(apartment_window(line, 1).chambers) == 4
    empty = apartment_window(line, [(1, -1)])
    assert empty.chambers == [] and empty.hyperplanes == []
    plane = apartment_window(BTTriple.sl(3).root_system, 1)
    assert len({alpha for alpha, _ in plane.hyperplanes}) == 3


def test_parabolic_images():
    report = parabolic_image_check(X2, X1, 2)
    assert (report.group_order, report.image_order) == (6, 2)
    assert report.is_parabolic and report.is_proper
    assert report.maps_onto_radical
    whole = parabolic_image_check(X1, X1, 2)
    assert whole.image_order == 6 and not whole.is_proper
    report3 = parabolic_image_check(X2, X1, 3)
    assert (report3.group_order, report3.image_order) == (24, 6)


def test_tree_counts():
    assert len(sl2_tree(3, 1).vertices) == 5
    assert len(sl2_tree(2, 2).vertices) == 10
    assert len(sl2_tree(5, 0).vertices) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_tree_is_thick_and_thin(q):
    ball = sl2_tree(q, 3)
    assert tree_is_thick(ball)
    leaves = [v for v in ball.vertices if len(v) == 3]
    for a, b in ((leaves[0], leaves[-1]), (leaves[0], leaves[1])):
        path = tree_apartment(ball, a, b)
        assert tree_is_thin(ball, path)


def test_torus_filtrations():
    torus = TorusDescriptor.elliptic("SL", 7, 3, 4)
    level = torus_filtration(torus, Fraction(1, 2))
    rng = random.Random(0)
    for _ in range(20):
        s = torus.sample(rng, 0)
        assert level.contains(s) == torus.in_filtration(s, 1)


@given(st.sampled_from([X1, X2]), levels, seeds)
def test_filtration_is_normal_in_parahoric(x, r, seed):
    rng = random.Random(seed)
    g = generator_product(x, r, Q7, rng)
    k = generator_product(x, 0, Q7, rng)
    assert mp_membership(mat_mul(mat_mul(k, g), mat_inverse(k)), x, r)


@given(st.sampled_from([X1, X2]), st.sampled_from([Fraction(1, 2), Fraction(1)]), seeds)
def test_commutators_land_in_next_level(x, r, seed):
    rng = random.Random(seed)
    g = generator_product(x, r, Q7, rng)
    h = generator_product(x, r, Q7, rng)
    commutator = mat_mul(mat_mul(g, h), mat_mul(mat_inverse(g), mat_inverse(h)))
    assert mp_membership(commutator, x, Level(Fraction(r), True))


@given(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=6), min_size=3, max_size=3),
       st.permutations(range(3)), st.fractions(min_value=0, max_value=2, max_denominator=6))
def test_weyl_transport_of_exponent_tables(coords, perm, r):
    x = BTTriple.gl(3, coords)
    y = conjugate_by_weyl(x, perm)
    before, after = exponent_table(x, r), exponent_table(y, r)
    for i in range(3):
        for j in range(3):
            assert after[perm[i]][perm[j]] == before[i][j]
