from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_cusp.errors import UnsupportedType
from padic_cusp.root_data import (ChevalleyPinning, build_root_system, check_pinning, pairing,
                                  pinning_weyl_element, type_a_datum, weyl_group_elements,
                                  weyl_group_order, weyl_order_formula)

SUPPORTED = [("A", n) for n in range(1, 5)] + [("B", 2), ("B", 3), ("B", 4), ("C", 3), ("D", 3), ("D", 4), ("G", 2)]


def test_root_counts():
    assert len(build_root_system("A", 1).roots) == 2
    assert len(build_root_system("A", 2).roots) == 6
    assert len(build_root_system("G", 2).roots) == 12


def test_weyl_orders():
    assert weyl_group_order(build_root_system("A", 2)) == 6
    assert weyl_group_order(build_root_system("G", 2)) == 12
    assert weyl_group_order(build_root_system("B", 3)) == 48


@pytest.mark.parametrize("cartan,rank", SUPPORTED)
def test_weyl_order_matches_closed_form(cartan, rank):
    assert weyl_group_order(build_root_system(cartan, rank)) == weyl_order_formula(cartan, rank)


@pytest.mark.parametrize("cartan,rank", SUPPORTED)
def test_reflections_preserve_roots(cartan, rank):
    rs = build_root_system(cartan, rank)
    roots = set(rs.roots)
    for beta in rs.roots:
        assert pairing(beta, rs.coroot(beta)) == 2
        assert {tuple(Fraction(c) for c in rs.reflect(beta, a)) for a in rs.roots} == \
            {tuple(Fraction(c) for c in a) for a in roots}


def test_pairings():
    rs = build_root_system("A", 1)
    alpha = rs.roots[0]
    coroot = rs.coroot(alpha)
    assert pairing(alpha, coroot) == 2
    assert pairing(alpha, [Fraction(c, 4) for c in coroot]) == Fraction(1, 2)
    assert pairing(alpha, (0, 0)) == 0


def test_pinning_weyl_elements():
    assert pinning_weyl_element(ChevalleyPinning.type_a(2), (1, -1)) == [[0, 1], [-1, 0]]
    w = pinning_weyl_element(ChevalleyPinning.type_a(3), (1, -1, 0))
    assert w == [[0, 1, 0], [-1, 0, 0], [0, 0, 1]]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("kind", ["SL", "GL"])
def test_pinning_property(n, kind):
    assert check_pinning(ChevalleyPinning.type_a(n, kind))


def test_gl_carries_center():
    assert type_a_datum(3, "GL").central == (1, 1, 1)
    assert type_a_datum(3, "SL").central is None
    with pytest.raises(UnsupportedType):
        type_a_datum(2, "SO")


@given(st.sampled_from(SUPPORTED))
def test_longest_element_squares_to_identity(case):
    rs = build_root_system(*case)
    elements = weyl_group_elements(rs)
    positive = set(rs.index(r) for r in rs.positive_roots())
    # the longest element sends every positive root to a negative one
    longest = [w for w in elements if not positive & {w[i] for i in positive}]
    assert len(longest) == 1
    w0 = longest[0]
    assert tuple(w0[k] for k in w0) == tuple(range(len(rs.roots)))
