from fractions import Fraction

from hypothesis import given, strategies as st

from padic_cusp.cyclotomic import (Cyclotomic, RootOfUnity, cyclotomic_poly, gauss_sum, mat_inverse,
                                   mat_identity, mat_mul, mat_eq, sqrt_rational, totient)

orders = st.integers(1, 24)


def test_cyclotomic_polynomials():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert totient(12) == 4


@given(orders, st.integers(0, 50))
def test_root_of_unity_power_is_one(n, k):
    z = Cyclotomic.zeta(n, k)
    assert z ** n == 1


@given(orders)
def test_sum_of_all_nth_roots_vanishes(n):
    total = sum((Cyclotomic.zeta(n, k) for k in range(n)), Cyclotomic.rational(0))
    assert total == (1 if n == 1 else 0)


def test_gauss_sums():
    for ell in (3, 5, 7, 11):
        g = gauss_sum(ell)
        assert g * g == (-1) ** ((ell - 1) // 2) * ell


@given(st.integers(-20, 20), st.integers(1, 12))
def test_sqrt_rational(num, den):
    # radicands stay small: each odd prime factor adds a Gauss sum to the level
    q = Fraction(num, den)
    r = sqrt_rational(q)
    assert r * r == q


@given(st.fractions(max_denominator=12), st.fractions(max_denominator=12))
def test_root_of_unity_arithmetic(a, b):
    x, y = RootOfUnity(a), RootOfUnity(b)
    assert (x * y).to_cyclotomic() == x.to_cyclotomic() * y.to_cyclotomic()
    assert (x * x.inverse()).is_one()


def test_matrix_inverse():
    z = Cyclotomic.zeta(5)
    m = [[z, Cyclotomic.rational(1)], [Cyclotomic.rational(2), z * z]]
    assert mat_eq(mat_mul(m, mat_inverse(m)), mat_identity(2))
