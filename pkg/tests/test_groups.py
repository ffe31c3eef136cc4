import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sl2parahoric.errors import DomainError, ResourceBudgetError
from sl2parahoric.groups import (IwahoriTriple, Kind, ResidueInt, ResidueMatrix, conjugacy_classes,
                                 double_coset_decomposition, edge_homomorphism_q1, enumerate_group,
                                 full_order, iwahori_factorize, lambda_projection, mat_mul, q1_arrays,
                                 twist_by, weyl_conjugate)

LEVELS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)]


def brute_sl2(p, N):
    M = p**N
    return [(a, b, c, d) for a, b, c, d in itertools.product(range(M), repeat=4) if (a * d - b * c) % M == 1]


def test_residue_int():
    x = ResidueInt(3, 2, 6)
    assert x.valuation() == 1 and not x.is_unit()
    assert ResidueInt(3, 2, 0).valuation() == 2
    y = ResidueInt(3, 2, 4)
    assert int(y * y.inverse()) == 1
    with pytest.raises((DomainError, ZeroDivisionError, ValueError)):
        x.inverse()


def test_residue_matrix_determinant():
    with pytest.raises(DomainError):
        ResidueMatrix(3, 1, 1, 1, 1, 1)
    w = ResidueMatrix.weyl(3, 2)
    assert w * w == ResidueMatrix(3, 2, 8, 0, 0, 8)
    assert (w**4).entries() == (1, 0, 0, 1)


@pytest.mark.parametrize("p,N", [(2, 1), (3, 1), (2, 2)])
def test_full_group_against_brute_force(p, N):
    G = enumerate_group(p, N, Kind.FULL)
    assert sorted(zip(*(v.tolist() for v in G.elements))) == brute_sl2(p, N)


@pytest.mark.parametrize("p,N", LEVELS + [(3, 3)])
def test_orders(p, N):
    M = p**N
    phi = M - M // p
    assert enumerate_group(p, N, "full").order == full_order(p, N) == p ** (3 * N - 2) * (p * p - 1)
    assert enumerate_group(p, N, "iwahori").order == full_order(p, N) // (p + 1)
    assert enumerate_group(p, N, "diagonal").order == phi
    assert enumerate_group(p, N, "unip_upper").order == M
    assert enumerate_group(p, N, "unip_lower").order == M // p


def test_spec_examples():
    assert enumerate_group(3, 1, "full").order == 24
    assert enumerate_group(3, 1, "unip_upper").order == 3
    assert enumerate_group(3, 2, "iwahori").order == 162
    assert enumerate_group(3, 1, "trivial").num_classes == 1
    assert enumerate_group(3, 1, "full").num_classes == 7
    L = enumerate_group(3, 2, "diagonal")
    assert L.num_classes == 6 and set(L.class_sizes) == {1}


def test_budget():
    with pytest.raises(ResourceBudgetError) as err:
        enumerate_group(3, 4, "full")
    assert err.value.required == 3**12


@pytest.mark.parametrize("p,N", LEVELS)
@pytest.mark.parametrize("kind", ["full", "iwahori", "iwahori_meet", "lower_borel"])
def test_classes_partition_and_closed(p, N, kind):
    G = enumerate_group(p, N, kind)
    assert G.class_sizes.sum() == G.order
    assert G.conjugation_closed()
    parts = conjugacy_classes(G)
    assert [min(c) for c in parts] == list(G.class_reps)


def test_class_representative_is_least():
    G = enumerate_group(3, 2, "iwahori")
    for i in range(G.order):
        assert G.rep(int(G.class_of[i])).entries() <= G.element(i).entries()


@pytest.mark.parametrize("p,N", LEVELS + [(3, 3)])
def test_iwahori_triple(p, N):
    T = IwahoriTriple.standard(p, N)
    assert T.U.order * T.L.order * T.Ubar.order == T.J.order
    assert T.is_bijective() and T.normalizes()


def test_factorization_example():
    g = ResidueMatrix(3, 2, 1, 1, 3, 4)
    u, l, ub = iwahori_factorize(g)
    assert l == ResidueMatrix.diag(3, 2, pow(4, -1, 9))
    assert u * l * ub == g
    assert iwahori_factorize(ResidueMatrix.identity(3, 2)) == (ResidueMatrix.identity(3, 2),) * 3
    with pytest.raises(DomainError):
        iwahori_factorize(ResidueMatrix.weyl(3, 2))


J32 = enumerate_group(3, 2, "iwahori")
U32 = enumerate_group(3, 2, "unip_upper")
Ub32 = enumerate_group(3, 2, "unip_lower")
L32 = enumerate_group(3, 2, "diagonal")


@given(st.integers(0, J32.order - 1), st.integers(0, U32.order - 1), st.integers(0, Ub32.order - 1))
@settings(max_examples=100, deadline=None)
def test_lambda_bi_invariant(i, a, b):
    g, u, ub = J32.element(i), U32.element(a), Ub32.element(b)
    assert lambda_projection(u * g * ub) == lambda_projection(g)
    f = iwahori_factorize(g)
    assert f[0] * f[1] * f[2] == g


@given(st.integers(0, L32.order - 1))
def test_lambda_of_diagonal_and_w(i):
    l = L32.element(i)
    assert lambda_projection(l) == l
    a = l.a
    assert weyl_conjugate(l) == ResidueMatrix.diag(3, 2, pow(a, -1, 9))


def test_lambda_of_unipotent_product():
    assert lambda_projection(U32.element(4) * Ub32.element(2)) == ResidueMatrix.identity(3, 2)


@pytest.mark.parametrize("p,N", [(3, 1), (3, 2), (5, 1)])
def test_bruhat(p, N):
    K, J = enumerate_group(p, N, "full"), enumerate_group(p, N, "iwahori")
    w = ResidueMatrix.weyl(p, N)
    cos = double_coset_decomposition(J, K, preferred=(ResidueMatrix.identity(p, N), w))
    assert len(cos) == 2
    assert {d.rep for d in cos} == {ResidueMatrix.identity(p, N), w}
    assert sorted(d.size for d in cos) == sorted([J.order, K.order - J.order])
    assert len(double_coset_decomposition(K, K)) == 1


def test_double_coset_requires_subgroup():
    with pytest.raises(DomainError):
        double_coset_decomposition(enumerate_group(3, 1, "full"), enumerate_group(3, 1, "iwahori"))


@pytest.mark.parametrize("p,N", [(3, 2), (3, 3), (2, 2)])
def test_q1_exhaustive(p, N):
    Jl = enumerate_group(p, N, "iwahori_lower")
    J = enumerate_group(p, N - 1, "iwahori")
    img = q1_arrays(Jl.elements, p, N)
    idx = J.index_of(img)
    assert np.all(idx >= 0) and len(np.unique(idx)) == J.order
    n = Jl.order
    if n <= 200:
        ii, jj = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        x = tuple(v[ii.ravel()] for v in Jl.elements)
        y = tuple(v[jj.ravel()] for v in Jl.elements)
        lhs = q1_arrays(mat_mul(x, y, Jl.M), p, N)
        rhs = mat_mul(q1_arrays(x, p, N), q1_arrays(y, p, N), J.M)
        assert all(np.array_equal(a, b) for a, b in zip(lhs, rhs))
    ident = J.index(ResidueMatrix.identity(p, N - 1))
    assert np.count_nonzero(idx == ident) == Jl.order // J.order


def test_q1_scalar():
    assert edge_homomorphism_q1(ResidueMatrix.identity(3, 2)) == ResidueMatrix.identity(3, 1)
    with pytest.raises(DomainError):
        edge_homomorphism_q1(ResidueMatrix.identity(3, 1))
    with pytest.raises(DomainError):
        edge_homomorphism_q1(ResidueMatrix.upper(3, 2, 1))


def test_weyl_conjugation():
    meet = enumerate_group(3, 2, "iwahori_meet")
    w = ResidueMatrix.weyl(3, 2)
    for i in range(meet.order):
        assert weyl_conjugate(meet.element(i)) in meet
    g = meet.element(7)
    assert weyl_conjugate(weyl_conjugate(g)) == g
    assert twist_by(g, w) == w.inverse() * g * w
