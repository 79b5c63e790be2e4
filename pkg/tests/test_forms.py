"""Invariant forms, quadratic forms in characteristic 2, Wall forms and spinor norms."""

import itertools

import numpy as np
import pytest
import sympy

from gen23.field import GF, is_square
from gen23.forms import (
    FormError,
    classify_form,
    dim7_wall_basis,
    dim7_wall_det_expected,
    dim7_wall_gram_expected,
    gram_matrix,
    invariant_forms,
    invariant_quadratic_char2,
    orthogonal_gram_dim7,
    preserves_form,
    spinor_norm_in_omega,
    wall_form,
)
from gen23.generators import Family, build, field_for, search_parameter, sp6_gram
from gen23.matrix import Matrix


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_sp6_fixes_gram(q):
    F = GF(q)
    for a in F.nonzero():
        pair = build(Family.SP6_EVEN, F, a)
        J = sp6_gram(F, a)
        assert classify_form(J) in ("alternating",)
        assert J.det() != 0
        assert preserves_form(pair.x, J) and preserves_form(pair.y, J)


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_orthogonal_closed_form(q):
    F = GF(q)
    for a in F.elements():
        pair = build(Family.DIM7_ORTH, F, a)
        B = orthogonal_gram_dim7(F, a)
        assert preserves_form(pair.x, B) and preserves_form(pair.y, B)
        assert classify_form(B) == "symmetric"


def test_closed_form_matches_sympy_solution():
    # solve x^T B x = B, y^T B y = B symbolically over Q(a)
    a = sympy.Symbol("a")
    xs = sympy.Matrix([[0, 1, 0, 0, 0, 0, a], [1, 0, 0, 0, 0, 0, a], [0, 0, 0, 1, 0, 0, 0],
                       [0, 0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1, -1], [0, 0, 0, 0, 1, 0, -1],
                       [0, 0, 0, 0, 0, 0, -1]])
    ys = sympy.Matrix([[1, 0, -1, 0, -1, 0, 2 * a - 1], [0, 0, -1, 0, 0, 0, 0],
                       [0, 1, -1, 0, 0, 0, 0], [0, 0, 0, 0, -1, 0, 0], [0, 0, 0, 1, -1, 0, 0],
                       [0, 0, 0, 0, 0, 0, -1], [0, 0, 0, 0, 0, 1, -1]])
    u, v, c = 2 * a - 1, 3 - 2 * a, 2 * a**2 - 2 * a - 1
    B = sympy.Matrix([[3, -1, -1, -1, -1, u, u], [-1, 3, -1, -1, u, -1, v],
                      [-1, -1, 3, v, -1, -1, -1], [-1, -1, v, 3, -1, -1, v],
                      [-1, u, -1, -1, 3, -1, -1], [u, -1, -1, -1, -1, 3, c],
                      [u, v, -1, v, -1, c, 3]])
    assert sympy.simplify(xs.T * B * xs - B) == sympy.zeros(7)
    assert sympy.simplify(ys.T * B * ys - B) == sympy.zeros(7)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_orthogonal_form_space_one_dimensional(q):
    F = GF(q)
    for a in F.elements():
        if a in (F(0), F(1), F(2), F(-2)):
            continue
        sol = invariant_forms(build(Family.DIM7_ORTH, F, a))
        assert sol.dimension == 1
        assert sol.kinds == ["symmetric"] and sol.nondegenerate == [True]


@pytest.mark.parametrize("q", [3, 4, 5])
def test_unitary_form_hermitian(q):
    family = Family.DIM7_UNIT
    F = field_for(family, q)
    a = search_parameter(family, F)
    sol = invariant_forms(build(family, F, a), "q-power")
    assert sol.dimension == 1
    assert sol.kinds == ["hermitian"] and sol.nondegenerate == [True]
    M = sol.basis[0]
    pair = build(family, F, a)
    assert preserves_form(pair.x, M, "q-power") and preserves_form(pair.y, M, "q-power")


def test_special_pair_forms():
    assert classify_form(gram_matrix(build(Family.SP6_3_SPECIAL))) == "alternating"
    assert classify_form(gram_matrix(build(Family.SU7_4_SPECIAL)), "q-power") == "hermitian"
    for fam in (Family.OM7_3_SPECIAL, Family.OM7_5_SPECIAL):
        assert classify_form(gram_matrix(build(fam))) == "symmetric"


@pytest.mark.parametrize("q", [2, 4, 8, 16])
def test_no_invariant_quadratic_form(q):
    F = GF(q)
    for a in F.nonzero():
        res = invariant_quadratic_char2(build(Family.SP6_EVEN, F, a))
        assert res.count == 0 and res.witness is None


def test_quadratic_form_brute_force_gf2():
    # with the polarization pinned to J only the six diagonal entries are free
    F = GF(2)
    pair = build(Family.SP6_EVEN, F, 1)
    J = sp6_gram(F, 1).tolist()
    vecs = [np.array(v) for v in itertools.product(range(2), repeat=6)]
    found = 0
    for diag in itertools.product(range(2), repeat=6):
        B = np.triu(np.array(J))
        np.fill_diagonal(B, diag)
        Q = lambda v: int(v @ B @ v) % 2
        if all(Q(pair.x.a @ v % 2) == Q(v) and Q(pair.y.a @ v % 2) == Q(v) for v in vecs):
            found += 1
    assert found == invariant_quadratic_char2(pair).count == 0


def test_quadratic_form_fixed_by_identity_pair():
    F = GF(2)
    I = Matrix.identity(F, 6)
    res = invariant_quadratic_char2([I, I])
    assert res.dimension == 21


@pytest.mark.parametrize("q", [3, 5, 7, 9, 11, 13])
def test_wall_gram_and_determinant(q):
    F = GF(q)
    for a in F.elements():
        pair = build(Family.DIM7_ORTH, F, a)
        B = orthogonal_gram_dim7(F, a)
        basis = dim7_wall_basis(F, a)
        wf = wall_form(pair.x, B, basis, require_nondegenerate=False)
        assert wf.gram == dim7_wall_gram_expected(F, a)
        assert wf.det == dim7_wall_det_expected(F, a)


def test_spinor_norm_square_for_valid_parameters():
    for q in (7, 9, 11, 13):
        F = GF(q)
        for a in F.elements():
            if a in (F(0), F(1), F(2), F(-2)) or not is_square(a - 1):
                continue
            assert spinor_norm_in_omega(build(Family.DIM7_ORTH, F, a).x, orthogonal_gram_dim7(F, a))


def test_wall_form_rejects_char2_and_degenerate():
    F = GF(4)
    with pytest.raises(FormError):
        wall_form(Matrix.identity(F, 3), Matrix.identity(F, 3))
    G = GF(5)
    with pytest.raises(FormError):
        wall_form(Matrix.identity(G, 3), Matrix.zeros(G, 3))


def test_reflection_spinor_norm():
    # a reflection in a vector of norm c has Wall determinant a multiple of c
    F = GF(7)
    B = Matrix.identity(F, 3)
    r = Matrix.from_rows(F, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]])   # reflection in e1, Q(e1) = 1
    wf = wall_form(r, B)
    assert wf.gram.n == 1
    # w(u,u) = B(u', u) with u = (r - I)u' = -2 u'; so the det is -1/2 * B(e1,e1)
    assert wf.det == F(-1) / F(2)
