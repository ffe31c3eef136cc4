import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2parahoric.cyclo import (Cyclotomic, conjugate, cyclotomic_poly, euler_phi, minimal_form,
                                rational_part, root_of_unity, to_common_conductor)

conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 12, 18, 27, 36])
small_q = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def cyclotomics(draw, m=None):
    m = m or draw(conductors)
    k = draw(st.integers(0, 3))
    x = Cyclotomic.rational(draw(small_q), m)
    for _ in range(k):
        x = x + root_of_unity(m, draw(st.integers(0, m - 1))) * draw(small_q)
    return x


def test_small_roots():
    assert root_of_unity(1, 0) == 1
    assert root_of_unity(2, 1) == -1
    z = root_of_unity(3, 1)
    assert (1 + z + z * z).is_zero()
    z5 = root_of_unity(5, 1)
    assert conjugate(z5) * z5 == 1


@pytest.mark.parametrize("m", [1, 2, 3, 4, 6, 7, 9, 12, 15, 36, 108])
def test_cyclotomic_poly_degree(m):
    assert len(cyclotomic_poly(m)) - 1 == euler_phi(m)


@pytest.mark.parametrize("m", [2, 3, 4, 6, 10, 12, 27])
def test_sum_of_roots_vanishes(m):
    total = sum((root_of_unity(m, k) for k in range(m)), Cyclotomic.rational(0, m))
    assert total.is_zero()


@given(cyclotomics(), cyclotomics())
@settings(max_examples=60, deadline=None)
def test_mul_inverse(x, y):
    if y.is_zero():
        with pytest.raises(ZeroDivisionError):
            y.inverse()
        return
    assert (x * y) * y.inverse() == x


@given(cyclotomics())
@settings(max_examples=60, deadline=None)
def test_conjugation_involution(x):
    assert conjugate(conjugate(x)) == x
    assert abs(x.conjugate().to_complex() - x.to_complex().conjugate()) < 1e-9


@given(cyclotomics(), cyclotomics())
@settings(max_examples=60, deadline=None)
def test_complex_embedding_is_a_ring_map(x, y):
    assert abs((x * y).to_complex() - x.to_complex() * y.to_complex()) < 1e-9
    assert abs((x + y).to_complex() - (x.to_complex() + y.to_complex())) < 1e-9


@given(cyclotomics(), cyclotomics(), cyclotomics())
@settings(max_examples=40, deadline=None)
def test_distributive(x, y, z):
    assert x * (y + z) == x * y + x * z


@given(cyclotomics())
@settings(max_examples=60, deadline=None)
def test_minimal_and_json_round_trip(x):
    d = x.minimal()
    assert d == x and x.m % d.m == 0
    assert Cyclotomic.from_json(x.to_json()) == x


def test_minimal_descends():
    assert root_of_unity(12, 4).minimal().m == 3
    assert (root_of_unity(8, 1) + root_of_unity(8, 7)).minimal().m == 8  # sqrt 2
    d, coords = minimal_form(12, (root_of_unity(12, 3) * 2).coeffs)
    assert d == 4


def test_common_conductor():
    a, b = to_common_conductor(root_of_unity(4, 1), root_of_unity(6, 1))
    assert a.m == b.m == 12
    assert a * a == -1


def test_rational_part():
    assert rational_part(Cyclotomic.rational(Fraction(3, 7), 9)) == Fraction(3, 7)
    with pytest.raises(ArithmeticError):
        rational_part(root_of_unity(3, 1))


def test_root_of_unity_matches_exp():
    for m in (5, 9, 12):
        for k in range(m):
            assert abs(root_of_unity(m, k).to_complex() - cmath.exp(2j * cmath.pi * k / m)) < 1e-9
