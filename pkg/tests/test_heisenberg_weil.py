import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_cusp.cyclotomic import Cyclotomic, mat_identity
from padic_cusp.errors import DegenerateForm
from padic_cusp.heisenberg_weil import (SymplecticSpace, commutator_form, heisenberg,
                                        lagrangian_uniqueness, verify_weil, weil)
from padic_cusp.tori import TorusDescriptor, quadratic_form_character
from padic_cusp.building import BTTriple
from padic_cusp.yu_config import load_yu

SPACES = [(3, 2), (5, 2), (3, 4)]


@pytest.fixture(scope="module")
def weil_3():
    return weil(heisenberg(SymplecticSpace.standard(3, 2)))


@pytest.fixture(scope="module")
def weil_5():
    return weil(heisenberg(SymplecticSpace.standard(5, 2)))


@pytest.mark.parametrize("p,d,degree", [(3, 2, 3), (5, 2, 5), (3, 4, 9)])
def test_heisenberg_degree(p, d, degree):
    heis = heisenberg(SymplecticSpace.standard(p, d))
    assert heis.degree == degree
    assert heis.degree ** 2 == len(heis.space.vectors())


@pytest.mark.parametrize("p,d", SPACES)
@pytest.mark.parametrize("central", [1, 2])
def test_center_acts_by_scalars(p, d, central):
    heis = heisenberg(SymplecticSpace.standard(p, d), central)
    assert heis.center_acts_by_scalars()
    zero = (0,) * d
    scalar = Cyclotomic.zeta(p, central)
    m = heis(zero, 1)
    assert all(m[i][j] == (scalar if i == j else 0) for i in range(heis.degree) for j in range(heis.degree))


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2)])
def test_heisenberg_is_irreducible(p, d):
    assert heisenberg(SymplecticSpace.standard(p, d)).character_norm() == 1


def test_invalid_forms():
    with pytest.raises(DegenerateForm):
        SymplecticSpace(3, ((0, 1), (1, 0)))
    with pytest.raises(DegenerateForm):
        SymplecticSpace(3, ((0, 0), (0, 0)))
    with pytest.raises(DegenerateForm):
        SymplecticSpace(3, ((0,),))


def test_weil_identity(weil_3):
    assert weil_3(weil_3.identity) == mat_identity(3)


def test_weil_exhaustive_for_p3(weil_3):
    assert verify_weil(weil_3) == {"elements": 24, "pairs": 576, "intertwining": True, "multiplicative": True}


def test_weil_sampled_for_p5(weil_5):
    result = verify_weil(weil_5, pair_sample=100, seed=5)
    assert result["elements"] == 120
    assert result["intertwining"] and result["multiplicative"]


@settings(max_examples=20)
@given(st.data())
def test_weil_covariance(weil_5, data):
    s = data.draw(st.sampled_from(weil_5.group.elements))
    v = data.draw(st.tuples(st.integers(0, 4), st.integers(0, 4)))
    assert weil_5.intertwines(s, v)


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2), (3, 4)])
def test_lagrangian_models_are_equivalent(p, d):
    assert lagrangian_uniqueness(SymplecticSpace.standard(p, d))


def test_commutator_form_vanishes_for_simple_datum():
    torus = TorusDescriptor.elliptic("SL", 7, 7, 6)
    theta = quadratic_form_character(torus, 2)
    x2 = BTTriple.sl(2, (Fraction(1, 4), Fraction(-1, 4)))
    assert commutator_form(x2, Fraction(1, 2), theta).dim == 0


def test_commutator_form_for_unramified_gl2():
    datum, _ = load_yu("builtin:gl2_unramified_depth2")
    space = commutator_form(datum.x, 2, datum.characters[0])
    assert space.dim == 2
    gram = space.gram
    assert all((gram[i][j] + gram[j][i]) % 3 == 0 for i in range(2) for j in range(2))
    assert space.gram_in_symplectic_basis() == ((0, 1), (2, 0))
