"""Finite-field arithmetic checked against sympy polynomial arithmetic mod p."""

import pytest
import sympy
from hypothesis import given, strategies as st

from gen23.field import (
    GF,
    FieldError,
    conjugates,
    default_modulus,
    element_order,
    extension_with_omega,
    find_root,
    frobenius,
    generates_field,
    is_square,
    minimal_polynomial,
    omega,
    parse_field,
    prime_power,
)

T = sympy.Symbol("t")


def _sym(F, e):
    # element as a sympy polynomial over GF(p)
    return sympy.Poly(list(reversed(e.coeffs)) or [0], T, modulus=F.p)


def _sym_mod(F):
    return sympy.Poly(list(reversed(F.modulus)), T, modulus=F.p)


def _from_sym(F, poly):
    coeffs = [int(c) % F.p for c in reversed(poly.all_coeffs())]
    return F(coeffs + [0] * (F.n - len(coeffs)))


@pytest.mark.parametrize("q,mod", [
    (4, (1, 1, 1)), (8, (1, 1, 0, 1)), (9, (1, 0, 1)), (16, (1, 1, 0, 0, 1)),
    (81, (2, 1, 0, 0, 1)), (169, (2, 0, 1)),
])
def test_default_modulus_is_least_irreducible(q, mod):
    p, n = prime_power(q)
    assert default_modulus(p, n) == mod
    assert sympy.Poly(list(reversed(mod)), T, modulus=p).is_irreducible


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        GF(3, 2, (-1, 0, 1))      # t^2 - 1
    with pytest.raises(FieldError, match="reducible"):
        GF(13, 2, (-2, 1, 1))     # t^2 + t - 2 = (t + 2)(t - 1)
    with pytest.raises(FieldError, match="monic"):
        GF(3, 2, (1, 0, 3))
    with pytest.raises(FieldError):
        GF(6)


def test_parse_field_roundtrip():
    F = parse_field("3^2/2,2,1")
    assert (F.p, F.n, F.modulus) == (3, 2, (2, 2, 1))
    assert parse_field(F.to_string()) is F
    assert parse_field("9") is GF(3, 2)
    with pytest.raises(FieldError):
        parse_field("x^y")


@pytest.mark.parametrize("q", [4, 8, 9, 25, 27, 49])
def test_multiplication_matches_sympy(q):
    F = GF(q)
    m = _sym_mod(F)
    for u in F.elements()[:: max(1, q // 9)]:
        for v in F.elements():
            prod = (_sym(F, u) * _sym(F, v)).rem(m)
            assert u * v == _from_sym(F, prod)


@given(st.sampled_from([2, 3, 4, 5, 8, 9, 13, 16, 27]), st.data())
def test_field_axioms(q, data):
    F = GF(q)
    pick = st.integers(0, q - 1).map(F.elem)
    a, b, c = data.draw(pick), data.draw(pick), data.draw(pick)
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0 and a + (-a) == 0
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b
        assert a ** (q - 1) == 1


def test_frobenius_is_automorphism(small_q):
    F = GF(small_q)
    for a in F.elements():
        assert frobenius(a, F.n) == a
        for b in F.elements()[:5]:
            assert frobenius(a * b) == frobenius(a) * frobenius(b)


def test_is_square_brute_force(small_q):
    F = GF(small_q)
    squares = {x * x for x in F.nonzero()}
    for a in F.nonzero():
        assert is_square(a) == (a in squares)
    with pytest.raises(ValueError):
        is_square(F.zero)


def test_element_order_brute_force():
    F = GF(16)
    for a in F.nonzero():
        k = next(k for k in range(1, 16) if a**k == 1)
        assert element_order(a) == k


def test_minimal_polynomial_agrees_with_sympy():
    F = GF(27)
    for a in F.elements():
        mp = minimal_polynomial(a)
        assert sum((a**i * int(mp.c[i]) for i in range(mp.deg + 1)), F.zero) == 0
        coeffs = [int(c) for c in reversed(mp.c)]
        assert sympy.Poly(coeffs, T, modulus=3).is_irreducible
        assert mp.deg == len(conjugates(a))
        assert generates_field(a) == (mp.deg == 3)


def test_omega():
    for q in [4, 7, 13, 16, 49]:
        w = omega(GF(q))
        assert w != 1 and w**3 == 1
    assert omega(GF(9)) == 1
    assert omega(GF(5)) is None
    big, emb = extension_with_omega(GF(5))
    assert big.q == 25 and omega(big) ** 3 == 1 and omega(big) != 1
    assert emb(GF(5)(3)) * emb(GF(5)(2)) == emb(GF(5)(1))


def test_find_root():
    F = GF(13)
    r = find_root([-2, 1, 1], F)   # (t + 2)(t - 1)
    assert r is not None and r * r + r - 2 == 0
    assert find_root([2, 0, 1], F) is None   # -2 is a non-residue mod 13
    assert find_root([2, 0, 1], GF(169)) is not None
