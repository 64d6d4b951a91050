from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from gcmirror import linalg
from gcmirror.errors import DimensionError
from gcmirror.generalized_algebra import (
    GVector,
    SplitFrame,
    ThreeForm,
    TwoForm,
    apply_map,
    basis,
    courant_bracket,
    exp_b,
    flat_frame,
    is_orthogonal,
    pairing,
    pairing_matrix,
    torus_frame,
)
from gcmirror.tduality import DualityData, phi_matrix

from conftest import gvectors, rationals, two_forms

T2 = torus_frame()
T4 = flat_frame(4)


def v2(*c):
    return GVector(T2, c)


# --- pairing -----------------------------------------------------------------

def test_pairing_fiber_vector_with_fiber_form():
    assert pairing(v2(0, 1, 0, 0), v2(0, 0, 0, 1)) == Fraction(1, 2)


def test_tangent_vectors_are_isotropic():
    assert pairing(v2(1, 0, 0, 0), v2(1, 0, 0, 0)) == 0


def test_pairing_of_vector_plus_form_with_itself():
    assert pairing(v2(1, 0, 1, 0), v2(1, 0, 1, 0)) == 1


def test_pairing_frame_mismatch():
    with pytest.raises(DimensionError):
        pairing(v2(1, 0, 0, 0), GVector(T4, (0,) * 8))
    with pytest.raises(DimensionError):
        pairing(v2(1, 0, 0, 0), GVector(torus_frame("theta~"), (1, 0, 0, 0)))


@given(gvectors(T4), gvectors(T4))
def test_pairing_symmetric(u, v):
    assert pairing(u, v) == pairing(v, u)


@given(gvectors(T4), gvectors(T4))
def test_pairing_matches_gram_matrix(u, v):
    P = pairing_matrix(4)
    assert pairing(u, v) == linalg.matvec([u.coeffs], linalg.matvec(P, v.coeffs))[0]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pairing_matrix_nondegenerate(n):
    P = pairing_matrix(n)
    assert linalg.det(P) != 0
    assert sympy.Matrix(P).det() == sympy.Rational(-1, 4) ** n


def test_frame_labels_and_dims():
    assert T2.labels == ("d/dx", "d/dtheta", "dx", "theta")
    assert T2.dim == 4 and T4.dim == 8
    with pytest.raises(DimensionError):
        SplitFrame(1, 1, ("a",))


# --- Courant bracket ---------------------------------------------------------

def test_bracket_vanishes_without_flux():
    assert courant_bracket(v2(1, 2, 3, 4), v2(5, 6, 7, 8)).is_zero()


def test_bracket_picks_up_flux_on_T4():
    H = ThreeForm.from_components(4, {(0, 1, 2): 1})
    e = basis(T4)
    w = courant_bracket(e[0], e[1], H)
    # hand expansion: sum_ij X_i Y_j H_ijk with X = e1, Y = e2 -> H_12k, nonzero only for k = 3
    assert w.coeffs == (0, 0, 0, 0, 0, 0, 1, 0)


H4 = ThreeForm.from_components(4, {(0, 1, 2): Fraction(3, 2), (0, 2, 3): -2, (1, 2, 3): Fraction(1, 7)})


@given(gvectors(T4), gvectors(T4))
def test_bracket_antisymmetric(u, v):
    assert (courant_bracket(u, v, H4) + courant_bracket(v, u, H4)).is_zero()


@given(gvectors(T4), gvectors(T4))
def test_bracket_brute_force(u, v):
    w = courant_bracket(u, v, H4)
    expected = [sum(u.coeffs[i] * v.coeffs[j] * H4.coeffs[i][j][k] for i in range(4) for j in range(4))
                for k in range(4)]
    assert list(w.tangent) == [0] * 4
    assert list(w.form) == expected


def test_three_form_antisymmetry_and_T2_vanishing():
    assert ThreeForm.zero(2).is_zero()
    with pytest.raises(DimensionError):
        ThreeForm.from_components(2, {(0, 1, 1): 1})
    with pytest.raises(DimensionError):
        ThreeForm(3, [[[1 if (i, j, k) == (0, 1, 2) else 0 for k in range(3)] for j in range(3)] for i in range(3)])
    H = ThreeForm.from_components(3, {(0, 1, 2): 5})
    assert H.coeffs[1][0][2] == -5 and H.coeffs[2][0][1] == 5 and H.coeffs[0][0][2] == 0


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionError):
        courant_bracket(v2(1, 0, 0, 0), v2(0, 1, 0, 0), H4)


# --- exp(B) ------------------------------------------------------------------

def test_exp_of_zero_is_identity():
    assert exp_b(TwoForm.zero(2)) == linalg.identity(4)


@pytest.mark.parametrize("b", [Fraction(1), Fraction(-3, 2), Fraction(7)])
def test_exp_b_block_form(b):
    assert exp_b(TwoForm.standard(b)) == linalg.as_matrix(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, b, 1, 0], [-b, 0, 0, 1]]
    )


@given(two_forms(4))
def test_exp_b_inverse(B):
    assert linalg.matmul(exp_b(B), exp_b(-B)) == linalg.identity(8)


@given(two_forms(3), two_forms(3))
def test_exp_b_is_additive(B1, B2):
    assert linalg.matmul(exp_b(B1), exp_b(B2)) == exp_b(B1 + B2)


@given(two_forms(4))
def test_exp_b_orthogonal(B):
    assert is_orthogonal(exp_b(B))


def test_two_form_must_be_antisymmetric():
    with pytest.raises(DimensionError):
        TwoForm([[1, 0], [0, 1]])


# --- apply_map / is_orthogonal ----------------------------------------------

@given(gvectors(T2))
def test_identity_map(u):
    assert apply_map(linalg.identity(4), u) == u


def test_exp_b_on_fiber_vector():
    assert apply_map(exp_b(TwoForm.standard(1)), v2(0, 1, 0, 0)).coeffs == (0, 1, 1, 0)


def test_phi_matrix_moves_fiber_form_to_fiber_vector():
    assert apply_map(phi_matrix(DualityData()), v2(0, 0, 0, 1)).coeffs == (0, 1, 0, 0)


def test_apply_map_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply_map(linalg.identity(8), v2(1, 0, 0, 0))


def test_orthogonality_checks():
    assert is_orthogonal(linalg.identity(4))
    assert not is_orthogonal(linalg.as_matrix([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    with pytest.raises(DimensionError):
        is_orthogonal(linalg.identity(3))
