"""Exact linear algebra over GF(q) against sympy and brute force."""

import numpy as np
import sympy
from hypothesis import given, strategies as st
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from gen23.field import GF
from gen23.matrix import (
    Matrix,
    char_poly,
    commutator,
    element_order,
    image_basis,
    invariant_factors,
    kernel_basis,
    min_poly,
    projective_order,
    solve,
    spanning_dimension,
)
from gen23.polyring import Poly

T = sympy.Symbol("t")


def int_matrices(p, n):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=n, max_size=n), min_size=n, max_size=n)


def _rank_mod_p(rows, p):
    return DomainMatrix([[SymGF(p)(v) for v in r] for r in rows], (len(rows), len(rows[0])), SymGF(p)).rank()


@given(st.sampled_from([2, 3, 5, 7, 13]), st.integers(1, 6), st.data())
def test_char_poly_matches_sympy(p, n, data):
    F = GF(p)
    rows = data.draw(int_matrices(p, n))
    A = Matrix.from_rows(F, rows)
    expected = [int(c) % p for c in reversed(sympy.Matrix(rows).charpoly(T).all_coeffs())]
    assert char_poly(A) == Poly.from_ints(F, expected)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 5), st.data())
def test_det_and_rank_match_sympy(p, n, data):
    F = GF(p)
    rows = data.draw(int_matrices(p, n))
    A = Matrix.from_rows(F, rows)
    assert A.det() == F(int(sympy.Matrix(rows).det()) % p)
    assert A.rank() == _rank_mod_p(rows, p)
    assert len(kernel_basis(A)) + len(image_basis(A)) == n


@given(st.sampled_from([4, 8, 9, 25]), st.integers(1, 5), st.data())
def test_invariant_factor_chain(q, n, data):
    F = GF(q)
    codes = data.draw(st.lists(st.integers(0, q - 1), min_size=n * n, max_size=n * n))
    A = Matrix.from_codes(F, np.array(codes).reshape(n, n))
    facs = invariant_factors(A)
    prod = Poly(F, [1])
    for f in facs:
        prod = prod * f
    assert prod == char_poly(A)
    assert facs[-1] == min_poly(A)
    for f, g in zip(facs, facs[1:]):
        assert not (g % f)
    # Cayley-Hamilton through the minimal polynomial
    acc = Matrix.zeros(F, n)
    for c in reversed(min_poly(A).c):
        acc = acc @ A + Matrix.scalar(F, n, F.elem(c))
    assert acc.is_zero()


def test_min_poly_degree_is_krylov_rank():
    # degree of the minimal polynomial = dim span{I, A, A^2, ...}
    F = GF(5)
    rng = np.random.default_rng(1)
    for _ in range(20):
        rows = rng.integers(0, 5, size=(5, 5)).tolist()
        if _ % 3 == 0:
            rows = (np.eye(5, dtype=int) * 2).tolist()
        A = Matrix.from_rows(F, rows)
        powers = [Matrix.identity(F, 5)]
        for _k in range(5):
            powers.append(powers[-1] @ A)
        flat = [[int(v) for v in P.a.ravel()] for P in powers]
        assert min_poly(A).deg == _rank_mod_p(flat, 5)


def test_known_invariant_factors():
    F = GF(3)
    A = Matrix.from_rows(F, [[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    assert [f.to_list() for f in invariant_factors(A)] == [["2", "1"], ["2", "0", "1"]]


def test_solve_and_inverse():
    F = GF(16)
    rng = np.random.default_rng(3)
    for _ in range(10):
        A = Matrix.from_codes(F, rng.integers(0, 16, size=(4, 4)))
        if A.det() == 0:
            continue
        assert (A @ A.inv()).is_identity()
        b = rng.integers(0, 16, size=4)
        x = solve(A, b)
        assert np.array_equal(A.apply(x), b)


def test_element_order_brute_force():
    F = GF(7)
    rng = np.random.default_rng(5)
    for _ in range(15):
        A = Matrix.from_codes(F, rng.integers(0, 7, size=(3, 3)))
        if A.det() == 0:
            continue
        k, P = 1, A
        while not P.is_identity():
            P = P @ A
            k += 1
        assert element_order(A) == k
        assert element_order(A, cap=k - 1) is None if k > 1 else True
        proj = next(j for j in range(1, k + 1) if (A**j).is_scalar())
        assert projective_order(A) == proj


def test_spanning_dimension_known_cases():
    F = GF(3)
    I = Matrix.identity(F, 3)
    assert spanning_dimension([I, I]) == 1
    D = Matrix.from_rows(F, [[1, 0, 0], [0, 2, 0], [0, 0, 0]])
    assert spanning_dimension([D]) == 3
    cyc = Matrix.from_rows(F, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])
    assert spanning_dimension([cyc, D]) == 9
    # block upper triangular pair fixes the first coordinate line
    U = Matrix.from_rows(F, [[1, 1, 0], [0, 1, 1], [0, 0, 2]])
    V = Matrix.from_rows(F, [[2, 0, 1], [0, 1, 0], [0, 1, 1]])
    assert spanning_dimension([U, V]) < 9


def test_commutator_convention():
    F = GF(5)
    x = Matrix.from_rows(F, [[1, 1], [0, 1]])
    y = Matrix.from_rows(F, [[1, 0], [1, 1]])
    assert commutator(x, y) == x.inv() @ y.inv() @ x @ y
    assert (x @ y @ commutator(y, x)) == y @ x
