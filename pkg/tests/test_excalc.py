import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from suqdirac.excalc import (
    DIMS,
    INDICES,
    THETA,
    UNIT,
    FormElement,
    antisymmetrizer,
    braided_commutator_action,
    braiding,
    exterior_d,
    lam,
    lift,
    one_form,
    project,
    representative,
    sigma_at,
    star_involution,
    structure_constants,
    two_form,
    unlift,
    volume_theta,
    wedge,
)
from suqdirac.linalg import SparseMatrix
from suqdirac.qscalar import I, ONE, Q, QScalar
from suqdirac.uqsu2 import MINUS, PLUS, Z, ModuleVector, Weight, x_action

q2 = Q ** 2


def basis_forms(k):
    return [FormElement.basis(k, i) for i in range(DIMS[k])]


ALL_FORMS = [f for k in range(4) for f in basis_forms(k)]


# braiding ------------------------------------------------------------------


def test_braid_equation():
    s1, s2 = sigma_at(1, 3), sigma_at(2, 3)
    assert s1 @ s2 @ s1 == s2 @ s1 @ s2


def test_spectral_decomposition():
    s, one = braiding(), SparseMatrix.identity(9)
    assert ((one - s) @ (one.scale(q2) + s)).is_zero()
    assert len((one - s).nullspace()) == 6
    assert len((one.scale(q2) + s).nullspace()) == 3


def test_braiding_is_invertible():
    s = braiding()
    assert s.rank() == 9


@pytest.mark.parametrize("k, rank", [(2, 3), (3, 1)])
def test_antisymmetrizer_is_scalar_on_its_image(k, rank):
    a = antisymmetrizer(k)
    assert a @ a == a.scale(lam(k))
    assert a.rank() == rank


def test_antisymmetrizer_values():
    assert lam(2) == 1 + q2
    assert lam(3) == (1 + q2) * (1 + q2 + Q ** 4)
    assert antisymmetrizer(4).is_zero()


# wedge and the quotient ----------------------------------------------------


def test_wedge_exchange_relations():
    m, p, z = (one_form(a) for a in (MINUS, PLUS, Z))
    assert wedge(p, m) == wedge(m, p).scale(-q2)
    assert wedge(z, m) == wedge(m, z).scale(-q2)
    assert wedge(p, z) == wedge(z, p).scale(-q2)
    assert wedge(m, m).is_zero() and wedge(p, p).is_zero()
    # the zz square is not zero but proportional to -+
    assert wedge(z, z) == two_form(MINUS, PLUS).scale(wedge(z, z).coeffs[0])


def test_wedge_associativity():
    for a, b, c in itertools.product(ALL_FORMS, repeat=3):
        if a.degree + b.degree + c.degree > 3:
            continue
        assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


def test_wedge_is_zero_above_top_degree():
    assert wedge(THETA, one_form(Z)).is_zero()


def test_theta_lift_carries_factor_i():
    t = volume_theta(with_i=True)
    assert lift(THETA) == t
    assert wedge(wedge(one_form(MINUS), one_form(PLUS)), one_form(Z)) == THETA.scale(-I)


@pytest.mark.parametrize("f", ALL_FORMS)
def test_project_lift_round_trip(f):
    assert project(representative(f)) == f
    assert unlift(lift(f)) == f


# hermitian structure ---------------------------------------------------------


def test_two_form_conjugates():
    mp, pz, zm = two_form(MINUS, PLUS), two_form(PLUS, Z), two_form(Z, MINUS)
    m, p, z = (one_form(a) for a in (MINUS, PLUS, Z))
    assert star_involution(mp) == -mp
    assert star_involution(mp) == wedge(p, m).scale(1 / q2)
    assert star_involution(wedge(m, z)) == -wedge(z, p)
    assert star_involution(wedge(m, z)) == wedge(p, z).scale(1 / q2)
    assert star_involution(wedge(p, z)) == -wedge(z, m)
    assert star_involution(wedge(p, z)) == wedge(m, z).scale(q2)
    assert star_involution(THETA) == THETA
    assert star_involution(pz) == -zm


@pytest.mark.parametrize("f", ALL_FORMS)
def test_star_is_an_antilinear_involution(f):
    g = f.scale(2 + 3 * I)
    assert star_involution(star_involution(g)) == g
    assert star_involution(g) == star_involution(f).scale(2 - 3 * I)


@pytest.mark.parametrize("a, b", [(a, b) for a in ALL_FORMS for b in ALL_FORMS if a.degree + b.degree <= 3])
def test_star_reverses_wedge(a, b):
    sign = -ONE if (a.degree * b.degree) % 2 else ONE
    assert star_involution(wedge(a, b)) == wedge(star_involution(b), star_involution(a)).scale(sign)


# exterior derivative ---------------------------------------------------------


def test_d_on_one_forms():
    c = -I * (Q ** -2 + 1 / Q) / 2
    assert exterior_d(one_form(MINUS)) == two_form(Z, MINUS).scale(c)
    assert exterior_d(one_form(PLUS)) == two_form(PLUS, Z).scale(c)
    assert exterior_d(one_form(Z)) == two_form(MINUS, PLUS).scale(-2 * I * q2 / (1 + Q))


def test_d_classical_limit():
    # at q = 1: d w- = -i z^-, dwz = -i -^+
    dz = exterior_d(one_form(Z)).coeffs[0]
    assert dz.at_s(1) == -I
    assert exterior_d(one_form(MINUS)).coeffs[2].at_s(1) == -I


@pytest.mark.parametrize("f", ALL_FORMS)
def test_d_squared_vanishes(f):
    assert exterior_d(exterior_d(f)).is_zero()


def test_d_kills_functions_and_top_forms():
    assert exterior_d(UNIT).is_zero()
    assert exterior_d(THETA).is_zero()
    for f in basis_forms(2):
        assert exterior_d(f).is_zero()


@pytest.mark.parametrize("a, b", [(a, b) for a in ALL_FORMS for b in ALL_FORMS if a.degree + b.degree <= 2])
def test_graded_leibniz(a, b):
    sign = -ONE if a.degree % 2 else ONE
    assert exterior_d(wedge(a, b)) == wedge(exterior_d(a), b) + wedge(a, exterior_d(b)).scale(sign)


@pytest.mark.parametrize("f", ALL_FORMS)
def test_d_commutes_with_star(f):
    assert exterior_d(star_involution(f)) == star_involution(exterior_d(f))


# structure constants from U_q ---------------------------------------------------


def test_structure_constants():
    f = structure_constants()
    assert f[(MINUS, PLUS)] == {Z: 2 * I * q2 / (1 + Q)}
    assert f[(PLUS, MINUS)] == {Z: -2 * I * q2 / (1 + Q)}
    assert f[(MINUS, Z)] == {MINUS: -I * (1 + Q) / 2}
    assert f[(Z, MINUS)] == {MINUS: I * (1 + Q) / 2}
    assert f[(PLUS, Z)] == {PLUS: I * (1 + Q) / 2}
    assert f[(Z, PLUS)] == {PLUS: -I * (1 + Q) / 2}


@pytest.mark.parametrize("tj", range(7))
def test_structure_constants_hold_on_every_weight(tj):
    J = Fraction(tj, 2)
    f = structure_constants()
    for N in range(-tj, tj + 1, 2):
        v = ModuleVector.basis(Weight(J, N))
        for a, b in itertools.product(INDICES, repeat=2):
            lhs = braided_commutator_action(a, b, v)
            rhs = ModuleVector(J)
            for c, coeff in f.get((a, b), {}).items():
                rhs = rhs + x_action(c, v).scale(coeff)
            assert lhs == rhs


# serialization -------------------------------------------------------------------


@given(st.integers(0, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_form_json_round_trip(k, a, b):
    f = FormElement(k, tuple(QScalar(a) + b * I * Q ** j for j in range(DIMS[k])))
    assert FormElement.from_json(f.to_json()) == f
