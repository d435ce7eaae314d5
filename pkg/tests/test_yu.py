import dataclasses
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padic_cusp.errors import IncomparableData, UnsupportedDescriptor
from padic_cusp.tori import (LogCharacter, TorusDescriptor, field_character, quadratic_form_character,
                             tame_character, trivial_character)
from padic_cusp.yu import (DetCharacter, TameEllipticPair, assemble_kappa, assemble_rho_tilde,
                           assemble_tilde_K, datum_depth, howe_factorization, is_regular_tame_elliptic,
                           phi_r_jumps, refactorization_equivalent, sample_tilde_K, validate_yu_datum,
                           yu_datum_from_pair)
from padic_cusp.yu_config import load_yu

RAMIFIED = TorusDescriptor.elliptic("SL", 7, 7, 6)
UNRAMIFIED_SL = TorusDescriptor.elliptic("SL", 7, 3, 4)


def simple_pair(coeff=2):
    return TameEllipticPair(RAMIFIED, quadratic_form_character(RAMIFIED, coeff))


def gl2_pair(p, delta, c, tame, precision=5):
    torus = TorusDescriptor.elliptic("GL", p, delta, precision)
    fd = torus.field
    chi = LogCharacter(fd, c=fd(*c) if c is not None else None, tame=tame)
    return TameEllipticPair(torus, field_character(torus, chi))


def test_simple_datum_kappa_is_trivial():
    datum, _ = load_yu("builtin:sl2_simple")
    kappa = assemble_kappa(datum)
    assert kappa.degree == 1
    assert all(step.space.dim == 0 for step in kappa.steps)
    assert assemble_rho_tilde(datum).degree == 1


def test_unramified_gl2_kappa_has_degree_three():
    datum, _ = load_yu("builtin:gl2_unramified_depth2")
    assert validate_yu_datum(datum).valid
    assert assemble_kappa(datum).degree == 3


def test_depth_zero_datum_has_trivial_kappa():
    datum = yu_datum_from_pair(TameEllipticPair(UNRAMIFIED_SL, tame_character(UNRAMIFIED_SL, 1)))
    assert datum.n == 0
    assert assemble_kappa(datum).degree == 1
    assert datum_depth(datum) == 0


def test_validity_verdicts_of_builtins():
    expected = {"sl2_simple": True, "gl2_unramified_depth2": True, "gl2_det_twist": True,
                "gl2_nongeneric": False, "sl2_depth_zero_x2": False}
    for name, valid in expected.items():
        datum, _ = load_yu(f"builtin:{name}")
        assert validate_yu_datum(datum).valid is valid, name
    report = validate_yu_datum(load_yu("builtin:gl2_nongeneric")[0])
    assert not report.get("(iii) generic").ok
    assert report.get("structure").ok
    report = validate_yu_datum(load_yu("builtin:sl2_depth_zero_x2")[0])
    assert not report.get("(ii) vertex").ok


def test_tilde_K_contains_its_samples():
    datum, _ = load_yu("builtin:sl2_simple")
    K = assemble_tilde_K(datum)
    for k in sample_tilde_K(datum, random.Random(2), 20):
        assert K.contains(k)


def test_refactorization_examples():
    datum = yu_datum_from_pair(simple_pair())
    assert refactorization_equivalent(datum, datum)
    # moving a depth-zero character from rho into phi_1
    chi = tame_character(RAMIFIED, 1)
    moved_rho = dataclasses.replace(datum.rho, character=tame_character(RAMIFIED, -1))
    moved = dataclasses.replace(datum, characters=[datum.characters[0] * chi], rho=moved_rho)
    assert refactorization_equivalent(datum, moved)
    assert refactorization_equivalent(moved, datum)
    changed = dataclasses.replace(datum, characters=[quadratic_form_character(RAMIFIED, 4)])
    assert not refactorization_equivalent(datum, changed)


def test_refactorization_needs_matching_shapes():
    simple = yu_datum_from_pair(simple_pair())
    depth_zero = yu_datum_from_pair(TameEllipticPair(UNRAMIFIED_SL, tame_character(UNRAMIFIED_SL, 1)))
    with pytest.raises(IncomparableData):
        refactorization_equivalent(simple, depth_zero)


def test_jumps_of_simple_pair():
    jumps = phi_r_jumps(simple_pair())
    assert jumps.depths == [Fraction(1, 2)]
    assert not jumps.phi[Fraction(1, 2)] and jumps.phi[Fraction(1)]
    assert jumps.levi_is_torus == [False, True]


def test_jumps_of_depth_zero_pair():
    jumps = phi_r_jumps(TameEllipticPair(UNRAMIFIED_SL, tame_character(UNRAMIFIED_SL, 1)))
    assert jumps.depths == []
    assert jumps.levi_is_torus == [False]


def test_howe_factorizations():
    pair = simple_pair()
    fact = howe_factorization(pair)
    assert fact.phis == [pair.theta] and fact.check(pair)
    assert all(v.is_one() for v in (fact.last(s) for s in RAMIFIED.roots_of_unity()))
    depth_zero = TameEllipticPair(UNRAMIFIED_SL, tame_character(UNRAMIFIED_SL, 1))
    fact0 = howe_factorization(depth_zero)
    assert fact0.phis == [] and fact0.last is depth_zero.theta
    twisted = gl2_pair(7, 3, (Fraction(1, 7),), 1)
    fact_gl = howe_factorization(twisted)
    assert len(fact_gl.phis) == 1 and isinstance(fact_gl.phis[0], DetCharacter)
    assert fact_gl.phis[0].depth == 1 and fact_gl.check(twisted)


def test_regularity():
    assert is_regular_tame_elliptic(simple_pair())
    assert not is_regular_tame_elliptic(TameEllipticPair(UNRAMIFIED_SL, trivial_character(UNRAMIFIED_SL)))
    assert is_regular_tame_elliptic(gl2_pair(7, 3, (Fraction(1, 7),), 1))
    with pytest.raises(UnsupportedDescriptor):
        TameEllipticPair(TorusDescriptor.split("GL", 2, 7), None)


def test_pipeline_outputs():
    assert validate_yu_datum(yu_datum_from_pair(simple_pair())).valid
    depth_zero = yu_datum_from_pair(TameEllipticPair(UNRAMIFIED_SL, tame_character(UNRAMIFIED_SL, 1)))
    assert depth_zero.n == 0 and depth_zero.rho.kind == "deligne_lusztig"
    depth_two = yu_datum_from_pair(gl2_pair(3, 2, (0, Fraction(1, 9)), 0, 6))
    assert validate_yu_datum(depth_two).valid
    assert assemble_kappa(depth_two).degree == 3


def test_independence_of_the_point():
    pair = gl2_pair(3, 2, (0, Fraction(1, 9)), 0, 6)
    first = yu_datum_from_pair(pair)
    second = yu_datum_from_pair(pair, first.x.translate((Fraction(1, 2), Fraction(1, 2))))
    assert refactorization_equivalent(first, second)


pairs = st.one_of(
    st.builds(simple_pair, st.integers(1, 6)),
    st.builds(lambda p, delta, k: TameEllipticPair(TorusDescriptor.elliptic("SL", p, delta, 4),
                                                  tame_character(TorusDescriptor.elliptic("SL", p, delta, 4), k)),
              st.just(3), st.just(2), st.integers(0, 7)),
    st.builds(lambda num, k: gl2_pair(3, 2, (Fraction(num, 3),), k), st.integers(0, 2), st.integers(0, 7)),
    st.builds(lambda num, k: gl2_pair(5, 2, (Fraction(num, 5),), k), st.integers(0, 4), st.integers(0, 23)),
)


@settings(max_examples=25)
@given(pairs)
def test_accepted_pairs_give_valid_data(pair):
    if not is_regular_tame_elliptic(pair):
        return
    fact = howe_factorization(pair)
    assert fact.check(pair)
    datum = yu_datum_from_pair(pair)
    assert validate_yu_datum(datum).valid
    assert refactorization_equivalent(datum, datum)
