from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from sl2parahoric import linalg

int_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(int_matrices)
@settings(max_examples=80, deadline=None)
def test_rank_matches_float_rank(a):
    assert linalg.rank(a) == np.linalg.matrix_rank(np.array(a, dtype=float))


@given(int_matrices)
@settings(max_examples=80, deadline=None)
def test_nullspace_is_kernel(a):
    basis = linalg.nullspace(a)
    ncols = len(a[0])
    assert len(basis) == ncols - linalg.rank(a)
    for v in basis:
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


def test_solve_rational():
    x = linalg.solve_rational([[2, 1], [1, 3]], [3, 5])
    assert x == [Fraction(4, 5), Fraction(7, 5)]
    assert linalg.solve_rational_or_none([[1, 1], [2, 2]], [1, 3]) is None


@given(st.lists(st.integers(0, 96), min_size=16, max_size=16))
@settings(max_examples=50, deadline=None)
def test_charpoly_cayley_hamilton(entries):
    ell = 97
    a = np.array(entries, dtype=np.int64).reshape(4, 4)
    poly = linalg.hessenberg_charpoly_mod(a, ell)
    assert len(poly) == 5 and poly[-1] == 1
    acc = np.zeros_like(a)
    for c in reversed(poly):
        acc = (acc @ a + c * np.eye(4, dtype=np.int64)) % ell
    assert not acc.any()


def test_roots_and_nullspace_mod():
    ell = 13
    a = np.diag([2, 5, 5]).astype(np.int64)
    assert linalg.roots_mod(linalg.hessenberg_charpoly_mod(a, ell), ell) == [2, 5]
    assert linalg.nullspace_mod((a - 5 * np.eye(3, dtype=np.int64)) % ell, ell).shape[1] == 2


def test_primes():
    assert [n for n in range(20) if linalg.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    for ell in (7, 13, 37, 109):
        g = linalg.primitive_root_mod_prime(ell)
        assert len({pow(g, k, ell) for k in range(ell - 1)}) == ell - 1
