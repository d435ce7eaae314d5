import random

import pytest
from hypothesis import given, settings, strategies as st

from padic_cusp.errors import NotIrreducible, UnsupportedGroup
from padic_cusp.finrep import (ClassFunction, FiniteGroup, MatrixRep, character_table, decompose,
                               fixed_dimension, frobenius_reciprocity, induce, induce_character,
                               induced_norm, intertwining_criterion, irreducible_matrices, is_cuspidal,
                               mackey_check, restrict, unipotent_radical)

S3 = FiniteGroup.symmetric(3)
A3 = S3.subgroup([(1, 2, 0)], "A3")
S4 = FiniteGroup.symmetric(4)
SL2_3 = FiniteGroup.sl2(3)


def values_by_cycle_type(chi):
    """Character of S3 as (identity, transposition, 3-cycle)."""
    out = {}
    for cls in chi.group.classes:
        g = cls[0]
        moved = sum(1 for i, j in enumerate(g) if i != j)
        out[moved] = chi.value(g)
    return out[0], out[2], out[3]


def nontrivial_linear(K):
    return next(c for c in character_table(K) if c.degree == 1 and any(v != 1 for v in c.class_values()))


def test_orders():
    assert (S3.order, A3.order, S4.order, SL2_3.order, FiniteGroup.gl2(3).order) == (6, 3, 24, 24, 48)


def test_induce_trivial_from_a3():
    rep = induce(MatrixRep.trivial(A3), S3)
    assert rep.degree == 2
    assert values_by_cycle_type(rep.character()) == (2, 0, 2)
    assert rep.is_homomorphism()


def test_induce_from_whole_group_is_identity():
    for chi in character_table(S3):
        assert induce_character(chi, S3) == chi


@pytest.mark.parametrize("index", range(3))
def test_induced_degree_multiplies_by_index(index):
    chi = character_table(A3)[index]
    rep = induce(MatrixRep.from_linear_character(chi), S3)
    assert rep.degree == 2 * chi.degree


def test_mackey_on_s3():
    chi = nontrivial_linear(A3)
    assert mackey_check(S3, A3, A3, chi)
    for psi in character_table(S3):
        assert mackey_check(S3, S3, A3, psi)


def test_mackey_random_subgroups_of_s4():
    subgroups = S4.all_subgroups()
    rng = random.Random(4)
    for _ in range(20):
        K, K2 = rng.choice(subgroups), rng.choice(subgroups)
        chi = rng.choice(character_table(K))
        assert mackey_check(S4, K, K2, chi)


def test_intertwining_criterion_on_s3():
    chi = nontrivial_linear(A3)
    assert intertwining_criterion(S3, A3, chi)
    assert induced_norm(S3, chi) == 1
    trivial = ClassFunction.trivial(A3)
    assert not intertwining_criterion(S3, A3, trivial)
    assert induced_norm(S3, trivial) == 2
    for psi in character_table(S3):
        assert intertwining_criterion(S3, S3, psi)


def test_intertwining_needs_irreducible():
    reducible = induce_character(ClassFunction.trivial(A3), S3)
    with pytest.raises(NotIrreducible):
        intertwining_criterion(S3, S3, reducible)


def test_cuspidality_verdicts_on_sl2_f3():
    u = ((1, 1), (0, 1))
    table = character_table(SL2_3)
    trivial = next(c for c in table if c.degree == 1 and all(v == 1 for v in c.class_values()))
    steinberg = next(c for c in table if c.degree == 3 and c.value(u) == 0)
    assert not is_cuspidal(trivial)
    assert fixed_dimension(steinberg, unipotent_radical(SL2_3)) == 1
    assert not is_cuspidal(steinberg)
    for chi in table:
        if chi.degree == 2 and chi.value(u) == -1:
            assert fixed_dimension(chi, unipotent_radical(SL2_3)) == 0
            assert is_cuspidal(chi)
    with pytest.raises(UnsupportedGroup):
        is_cuspidal(character_table(S3)[0])


@pytest.mark.parametrize("group", [S3, S4, SL2_3], ids=["S3", "S4", "SL2(F3)"])
def test_character_table_orthonormal(group):
    table = character_table(group)
    assert len(table) == len(group.classes)
    assert sum(int(c.degree.to_fraction()) ** 2 for c in table) == group.order
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            assert a.inner(b) == (1 if i == j else 0)


@settings(max_examples=25)
@given(st.data())
def test_frobenius_reciprocity(data):
    G = data.draw(st.sampled_from([S4, SL2_3]))
    H = data.draw(st.sampled_from(G.all_subgroups()))
    chi = data.draw(st.sampled_from(character_table(H)))
    psi = data.draw(st.sampled_from(character_table(G)))
    assert frobenius_reciprocity(chi, psi)


@pytest.mark.parametrize("group", [FiniteGroup.sl2(3), FiniteGroup.gl2(3)], ids=["SL2(F3)", "GL2(F3)"])
def test_fixed_dimension_matches_projector(group):
    N = unipotent_radical(group)
    for chi in character_table(group):
        rep = irreducible_matrices(chi)
        assert rep.character() == chi
        assert rep.fixed_dimension(N) == fixed_dimension(chi, N)


def test_decompose_regular_character():
    regular = induce_character(ClassFunction.trivial(S3.subgroup([S3.identity], "1")), S3)
    table = character_table(S3)
    assert decompose(regular, table) == [c.degree.to_fraction() for c in table]
