"""Generator construction, parameter conditions, search and reducibility witnesses."""

import pytest
from hypothesis import given, strategies as st

from gen23.certify import prime_powers
from gen23.field import GF, omega
from gen23.generators import (
    BuildError,
    Family,
    build,
    check_conditions,
    field_for,
    irreducibility_clause_i,
    irreducibility_clause_ii,
    reducibility_witness,
    search_parameter,
)
from gen23.matrix import Matrix

GENERIC = [Family.SP6_EVEN, Family.DIM7_ORTH, Family.DIM7_UNIT, Family.SL7_VARIANT]
SPECIAL = [Family.SP6_3_SPECIAL, Family.SU7_4_SPECIAL, Family.OM7_3_SPECIAL, Family.OM7_5_SPECIAL]


def _qs(family, q_max=13):
    parity = {Family.SP6_EVEN: "even", Family.DIM7_ORTH: "odd"}.get(family)
    qs = prime_powers(q_max, parity)
    if family is Family.DIM7_UNIT:
        qs = [q for q in qs if q <= 7]   # F_{q^2} grows quickly
    return qs


def test_sp6_matrices_literal():
    pair = build(Family.SP6_EVEN, GF(2), 1)
    assert pair.x.tolist() == [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 0],
                               [0, 1, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 1, 1]]
    assert pair.y.tolist() == [[1, 0, 0, 1, 1, 0], [0, 1, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0],
                               [0, 0, 1, 1, 0, 0], [0, 1, 1, 1, 1, 1], [0, 1, 1, 0, 1, 0]]


def test_dim7_substitution():
    F = GF(7)
    pair = build(Family.DIM7_ORTH, F, 3)
    assert pair.b == 3
    assert pair.x[0, 6] == 3 and pair.x[1, 6] == 3
    assert pair.y[0, 6] == 3 + 3 - 1


@pytest.mark.parametrize("p,s,h,seven", [(3, 2, 1, 1), (5, 1, 2, 2)])
def test_om7_special_entries_reduced(p, s, h, seven):
    pair = build({3: Family.OM7_3_SPECIAL, 5: Family.OM7_5_SPECIAL}[p])
    assert pair.x[1, 6] == s and pair.x[2, 6] == h and pair.y[1, 6] == seven


def test_su7_4_uses_omega():
    pair = build(Family.SU7_4_SPECIAL)
    w = omega(pair.field)
    assert pair.x[3, 6] == w and pair.x[4, 5] == w * w


@pytest.mark.parametrize("family", GENERIC)
def test_orders_for_all_parameters(family):
    for q in _qs(family, 9):
        F = field_for(family, q)
        for a in F.elements():
            if family is Family.SP6_EVEN and a == 0:
                continue
            pair = build(family, F, a)
            I = Matrix.identity(F, family.dim)
            assert pair.x @ pair.x == I
            assert pair.y @ pair.y @ pair.y == I


@pytest.mark.parametrize("family", SPECIAL)
def test_special_pair_orders(family):
    pair = build(family)
    I = Matrix.identity(pair.field, family.dim)
    x2 = pair.x @ pair.x
    assert pair.y @ pair.y @ pair.y == I
    if family is Family.SP6_3_SPECIAL:
        assert x2 == -I        # only the projective image is an involution
    else:
        assert x2 == I


def test_build_rejects():
    with pytest.raises(BuildError):
        build(Family.SP6_EVEN, GF(2), 0)
    with pytest.raises(BuildError):
        build(Family.SP6_EVEN, GF(3), 1)
    with pytest.raises(BuildError):
        build(Family.DIM7_ORTH, GF(4), 1)
    with pytest.raises(BuildError):
        build(Family.DIM7_UNIT, GF(27), 1)


def test_build_injective():
    F = GF(9)
    xs = {build(Family.DIM7_ORTH, F, a).x.key() for a in F.elements()}
    assert len(xs) == 9


def test_unitary_b_is_frobenius():
    F = field_for(Family.DIM7_UNIT, 3)
    for a in F.elements():
        assert build(Family.DIM7_UNIT, F, a).b == a**3


def test_conditions_examples():
    F = GF(7)
    rep = check_conditions(Family.DIM7_ORTH, F, 2)
    assert not rep.ok and "(i) a not in {0, 1, 2, -2}" in rep.failed()
    assert check_conditions(Family.DIM7_ORTH, F, 3).ok
    # a = b = 2 kills clause (ii) of the irreducibility criterion
    assert irreducibility_clause_ii(F(2), F(2)) == 0
    assert irreducibility_clause_i(F(2), F(2)) != 0


def test_table_row_for_q3_lies_in_base_field():
    # t^2 + t - 2 = (t - 1)(t + 2): its roots are in F_3, so a is never outside F_q
    F = field_for(Family.DIM7_UNIT, 3)
    roots = [a for a in F.elements() if a * a + a - 2 == 0]
    assert roots and all(a**3 == a for a in roots)
    assert all(not check_conditions(Family.DIM7_UNIT, F, a).ok for a in roots)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_unitary_clauses_invariant_under_frobenius(q):
    F = field_for(Family.DIM7_UNIT, q)
    for a in F.elements():
        r1 = check_conditions(Family.DIM7_UNIT, F, a)
        r2 = check_conditions(Family.DIM7_UNIT, F, a**q)
        for c1, c2 in zip(r1.clauses, r2.clauses):
            if c1.name in ("(i)", "(ii)"):
                assert c1.passed == c2.passed


def test_search_examples():
    assert search_parameter(Family.SP6_EVEN, GF(2)) == 1
    assert search_parameter(Family.DIM7_UNIT, field_for(Family.DIM7_UNIT, 2)) is None
    a = search_parameter(Family.DIM7_ORTH, GF(7))
    assert a - 1 in (GF(7)(1), GF(7)(2), GF(7)(4)) and a not in (0, 1, 2, 5)
    with pytest.raises(ValueError):
        search_parameter(Family.SU7_4_SPECIAL, GF(4))


@pytest.mark.parametrize("strategy", ["exhaustive", "primitive-first", "alpha-squared-plus-one"])
@pytest.mark.parametrize("family", GENERIC)
def test_search_output_passes_conditions(family, strategy):
    for q in _qs(family):
        F = field_for(family, q)
        a = search_parameter(family, F, strategy)
        if a is not None:
            assert check_conditions(family, F, a).ok


def test_orthogonal_search_fails_for_tiny_fields():
    # every a in F_3, F_5 hits {0, 1, 2, -2} or makes a - 1 a non-square
    assert search_parameter(Family.DIM7_ORTH, GF(3)) is None
    assert search_parameter(Family.DIM7_ORTH, GF(5)) is None


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_reducibility_witnesses(q):
    F = GF(q)
    count = 0
    for a in F.elements():
        for b in F.elements():
            if irreducibility_clause_i(a, b) == 0 or irreducibility_clause_ii(a, b) == 0:
                rep = reducibility_witness(F, a, b)
                assert rep.ok, [w.to_json() for w in rep.witnesses]
                degenerate = F.p == 2 and a == b == 1
                assert all(w.full_rank for w in rep.witnesses) != degenerate
                count += 1
    assert count > 0


def test_char2_witness_degenerates_at_one():
    rep = reducibility_witness(GF(4), 1, 1)
    (wit,) = rep.witnesses
    assert wit.invariant and wit.dimension == 2 and wit.expected_dimension == 6


def test_witness_clause_i_eigenvalues():
    F = GF(7)
    w = omega(F)
    a = F(3)
    b = -w * a + 2 * w * w
    rep = reducibility_witness(F, a, b)
    wit = next(x for x in rep.witnesses if x.clause == "(i)")
    assert wit.dimension == 1 and wit.invariant


def test_witness_requires_violation():
    F = GF(7)
    a = search_parameter(Family.DIM7_ORTH, F)
    with pytest.raises(ValueError):
        reducibility_witness(F, a, a)


@given(st.sampled_from([3, 5, 7, 9, 11, 13]), st.data())
def test_witness_dimension_matches_clause(q, data):
    F = GF(q)
    a = data.draw(st.sampled_from(F.elements()))
    # a = b = 2 always violates clause (ii) with a 4-dimensional witness
    rep = reducibility_witness(F, F(2), F(2))
    dims = {w.clause: w.dimension for w in rep.witnesses}
    assert dims.get("(ii) a = b = 2") == 4
    if irreducibility_clause_i(a, a) == 0 or irreducibility_clause_ii(a, a) == 0:
        assert reducibility_witness(F, a, a).ok
