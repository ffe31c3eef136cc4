from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sl2parahoric.chartab import ClassFunction, inner_product, norm
from sl2parahoric.errors import DomainError, ResourceBudgetError
from sl2parahoric.parahoric import (LCharacter, conductor, contragredient_check, dihedral_moments,
                                    invariants_U, l_class_function, lambda_star, lambda_upper_star,
                                    mackey_intertwining, one_dimensional_intertwining, parahoric_induce,
                                    parahoric_restrict, invariants_prediction, borel_counterexample,
                                    symmetry_check, unit_generator, vertex_induce_K, z_value)
from sl2parahoric.workspace import Workspace

RHO32 = LCharacter.all(3, 2)


def test_l_characters():
    assert unit_generator(3, 2) == 2 and unit_generator(5, 1) == 2
    assert [r.w.j for r in RHO32] == [0, 5, 4, 3, 2, 1]
    with pytest.raises(DomainError):
        LCharacter(2, 3, 1)
    with pytest.raises(DomainError):
        LCharacter(3, 2, 6)


def test_conductors_and_z():
    assert [conductor(r) for r in RHO32] == [0, 2, 2, 1, 2, 2]
    assert [z_value(r) for r in RHO32] == [1] + [Fraction(1, 3)] * 2 + [1] + [Fraction(1, 3)] * 2
    # a character factoring through units mod 3 has conductor 1: trivial on {1, 4, 7}
    rho = RHO32[3]
    assert all(rho.value(a) == 1 for a in (1, 4, 7))


def test_inflation_preserves_values():
    for rho in RHO32:
        up = rho.inflate(3)
        assert conductor(up) == conductor(rho)
        for a in (1, 2, 4, 5, 7, 8, 10, 11, 26):
            assert up.value(a) == rho.value(a % 9)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (2, 2)])
def test_induction_routes_agree(p, n):
    ws = Workspace(p)
    for rho in LCharacter.all(p, n):
        i1 = parahoric_induce(ws, rho)
        assert i1 == parahoric_induce(ws, rho, "lambda")
        assert norm(i1) == 1
        assert i1.degree == 1 / z_value(rho)
        assert parahoric_restrict(ws, i1).coords == tuple(Fraction(int(k == rho.j)) for k in range(rho.phi))


def test_lambda_basics(ws3):
    J, L = ws3.J(2), ws3.L(2)
    assert lambda_star(ws3, ClassFunction.trivial(J)) == ClassFunction.trivial(L)
    assert lambda_upper_star(ws3, ClassFunction.trivial(L)) == ClassFunction.trivial(J)
    for rho in RHO32:
        psi = l_class_function(ws3, rho)
        assert lambda_upper_star(ws3, psi).degree == psi.degree
        assert lambda_star(ws3, parahoric_induce(ws3, rho)) == psi * z_value(rho)


@given(st.integers(0, 5), st.integers(0, 33))
@settings(max_examples=60, deadline=None)
def test_lambda_adjoint(j, k):
    ws = Workspace(3)
    psi = l_class_function(ws, RHO32[j])
    phi = ws.table(ws.J(2))[k]
    assert inner_product(lambda_upper_star(ws, psi), phi) == inner_product(psi, lambda_star(ws, phi))


def test_restriction_of_irreducibles(ws3):
    for n in (1, 2, 3):
        nonzero = 0
        for pi in ws3.table(ws3.J(n)):
            r = parahoric_restrict(ws3, pi)
            assert r.is_character()
            assert r.function == invariants_prediction(ws3, pi)
            if not r.is_zero():
                nonzero += 1
                rho = LCharacter(3, n, r.coords.index(1))
                assert parahoric_induce(ws3, rho) == pi
        assert nonzero == len(LCharacter.all(3, n))


def test_restriction_of_trivial(ws3):
    r = parahoric_restrict(ws3, ClassFunction.trivial(ws3.J(2)))
    assert r.function == ClassFunction.trivial(ws3.L(2))


def test_level_one_is_inflation(ws3):
    for rho in LCharacter.all(3, 1):
        i = parahoric_induce(ws3, rho)
        assert i.degree == 1
        assert invariants_U(ws3, i) == l_class_function(ws3, rho)


def test_borel_counterexample(ws3):
    pi = borel_counterexample(ws3, 2)
    assert pi.degree == 2
    assert invariants_U(ws3, pi).degree == 0
    assert parahoric_restrict(ws3, pi).is_zero()
    assert lambda_star(ws3, pi).is_zero()
    assert dihedral_moments(ws3, pi, 1) == [0]


def test_vertex_induction_and_mackey(ws3):
    for rho in RHO32:
        v = vertex_induce_K(ws3, rho)
        assert v == vertex_induce_K(ws3, rho.w)
        assert v.to_class_function().degree == 4 * parahoric_induce(ws3, rho).degree
        assert v.norm() == (2 if rho.is_w_fixed() else 1)
        for tau in RHO32:
            lhs, rhs = mackey_intertwining(ws3, rho, tau)
            assert lhs == rhs
    assert mackey_intertwining(ws3, RHO32[0], RHO32[0]) == (2, 2)
    assert mackey_intertwining(ws3, RHO32[1], RHO32[2]) == (0, 0)


def test_one_dimensional_intertwining(ws3):
    for n in (1, 2):
        for rho in LCharacter.all(3, n):
            assert one_dimensional_intertwining(ws3, rho).ok()


def test_dihedral_moments(ws3):
    J = ws3.J(2)
    assert dihedral_moments(ws3, ClassFunction.trivial(J), 3) == [1, 1, 1]
    for rho in RHO32:
        m = dihedral_moments(ws3, parahoric_induce(ws3, rho), 3)
        z = z_value(rho)
        assert m == [z, z**2, z**3]


def test_dihedral_budget():
    ws = Workspace(3, max_words=100)
    with pytest.raises(ResourceBudgetError):
        dihedral_moments(ws, ClassFunction.trivial(ws.J(2)), 3)


def test_contragredient_and_symmetry(ws3):
    for rho in RHO32:
        assert contragredient_check(ws3, rho)
        assert symmetry_check(ws3, rho)
        if (2 * rho.j) % rho.phi == 0:
            assert parahoric_induce(ws3, rho).is_real()
    assert parahoric_induce(ws3, RHO32[1]).conjugate() == parahoric_induce(ws3, RHO32[5])
