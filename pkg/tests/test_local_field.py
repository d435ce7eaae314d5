import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_cusp.errors import NegativeValuation, NotAUnit
from padic_cusp.local_field import (INF, AdditiveCharacter, LocalFieldDesc, additive_char_eval,
                                    residue, teichmuller_part, val)
from padic_cusp.cyclotomic import RootOfUnity

Q7 = LocalFieldDesc.qp(7, 6)

nonzero_int = st.integers(min_value=-7 ** 5, max_value=7 ** 5).filter(lambda n: n != 0)
rationals = st.builds(Fraction, nonzero_int, st.integers(min_value=1, max_value=7 ** 3))


def test_valuations():
    assert val(Q7(7)) == 1
    assert val(Q7(Fraction(1, 49))) == -2
    assert val(Q7(0)) == INF
    ramified = LocalFieldDesc.quadratic(7, 7, 6)
    assert val(ramified.generator()) == Fraction(1, 2)
    assert val(ramified.uniformizer()) == Fraction(1, 2)


def test_residues():
    assert residue(Q7(10)) == 3
    assert residue(Q7(7)) == 0
    with pytest.raises(NegativeValuation):
        residue(Q7(Fraction(1, 7)))


def test_additive_character_values():
    phi = AdditiveCharacter(Q7)
    assert additive_char_eval(phi, Q7(1)) == RootOfUnity.of(1, 7)
    assert additive_char_eval(phi, Q7(3)) == RootOfUnity.of(3, 7)
    assert abs(phi(Q7(1)).to_complex() - complex(math.cos(2 * math.pi / 7), math.sin(2 * math.pi / 7))) < 1e-12


def test_teichmuller_examples():
    assert teichmuller_part(Q7(1)) == Q7(1)
    assert teichmuller_part(Q7(3), 2).base_coord().mod_int(2) == 31
    assert pow(3, 7, 49) == 31
    assert teichmuller_part(Q7(8)) == Q7(1)
    with pytest.raises(NotAUnit):
        teichmuller_part(Q7(7))


@given(rationals, rationals)
def test_valuation_is_multiplicative_and_ultrametric(a, b):
    x, y = Q7(a), Q7(b)
    assert val(x * y) == val(x) + val(y)
    if a + b != 0:
        assert val(x + y) >= min(val(x), val(y))
        if val(x) != val(y):
            assert val(x + y) == min(val(x), val(y))


@given(st.integers(0, 7 ** 4), st.integers(0, 7 ** 4))
def test_residue_is_a_ring_homomorphism(a, b):
    x, y = Q7(a), Q7(b)
    assert residue(x + y) == (residue(x) + residue(y)) % 7
    assert residue(x * y) == (residue(x) * residue(y)) % 7


@given(rationals, rationals)
def test_additive_character_is_additive(a, b):
    phi = AdditiveCharacter(Q7)
    x, y = Q7(a), Q7(b)
    assert phi(x) * phi(y) == phi(x + y)
    assert abs(abs(phi(x).to_complex()) - 1) < 1e-12


@given(st.integers(-7 ** 4, 7 ** 4))
def test_additive_character_trivial_on_maximal_ideal(n):
    phi = AdditiveCharacter(Q7)
    assert phi(Q7(7 * n)).is_one()


@given(st.integers(1, 7 ** 5).filter(lambda n: n % 7))
def test_teichmuller_is_a_root_of_unity(n):
    t = teichmuller_part(Q7(n), 4)
    assert (t ** 6 - 1).val() >= 4
    assert residue(t) == n % 7


def test_teichmuller_in_unramified_quadratic_field():
    field = LocalFieldDesc.quadratic(7, 3, 5)
    t = teichmuller_part(field(2, 1))
    assert (t ** 48 - 1).val() >= 5
    assert t.residue() == field(2, 1).residue()
