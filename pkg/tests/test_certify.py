"""Verification pipelines, certificates, identity sweeps and the mutation hook."""

import json

import pytest

from gen23.certify import (
    FAIL,
    PASS,
    PreconditionError,
    certify,
    certify_at,
    certify_pair,
    certify_sp6,
    certify_u7,
    min_diagonal_power,
    proof_identity_sweep,
    special_branch_checks,
    table_row,
    unitary_table,
)
from gen23.field import GF
from gen23.generators import Family, build, field_for, search_parameter
from gen23.matrix import Matrix

SCHEMA_KEYS = {"family", "q", "p", "n", "modulus", "a", "b", "checks", "order", "seed", "version"}


def test_sp6_gf2_certificate():
    cert = certify_sp6(GF(2), 1, seed=7)
    assert cert.passed
    assert cert.order_computed == 1_451_520
    js = cert.to_json()
    assert SCHEMA_KEYS <= set(js)
    assert js["order"] == {"computed": "1451520", "expected": "1451520"}
    assert [c["name"] for c in js["checks"]] == [
        "orders", "gram", "invariant-factors", "char-poly", "spanning", "quadratic-form",
        "g2-torus", "field-generation", "generation"]


def test_sp6_gf4_generator_passes():
    F = GF(4)
    cert = certify_sp6(F, F.gen)
    assert cert.passed and cert.check("field-generation").verdict == PASS


def test_sp6_gf4_a_one_fails_field_generation():
    cert = certify_sp6(GF(4), 1, keep_going=True)
    assert not cert.passed
    assert "field-generation" in cert.failed_checks()
    # <x, y> is then defined over F_2 and is Sp6(2), a proper subgroup
    assert cert.failed_checks() == ["field-generation", "generation"]
    assert cert.order_computed == 1_451_520
    for c in cert.checks:
        if c.verdict == FAIL:
            assert c.details


def test_fail_fast_skips_rest():
    cert = certify_sp6(GF(4), 1)
    names = [c.name for c in cert.checks]
    assert cert.check("generation").verdict == "skip"
    assert names.index("field-generation") < names.index("generation")


def test_o7_condition_failure():
    cert = certify(Family.DIM7_ORTH, GF(7), 2, use_bsgs=False)
    assert cert.checks[0].name == "conditions" and cert.checks[0].verdict == FAIL
    assert cert.checks[0].details["(i) a not in {0, 1, 2, -2}"] is False


def test_o7_gf7_a3_passes():
    cert = certify(Family.DIM7_ORTH, GF(7), 3)
    assert cert.passed
    assert cert.order_computed == 273_457_218_604_953_600


def test_preconditions():
    F = field_for(Family.DIM7_UNIT, 5)
    with pytest.raises(PreconditionError):
        certify_u7(F, 2)
    with pytest.raises(PreconditionError):
        certify_sp6(GF(3), 1)
    with pytest.raises(PreconditionError):
        certify(Family.DIM7_ORTH, GF(7))


def test_certificate_determinism():
    F = field_for(Family.DIM7_UNIT, 3)
    a = search_parameter(Family.DIM7_UNIT, F)
    c1 = certify(Family.DIM7_UNIT, F, a, seed=5, use_bsgs=False)
    c2 = certify(Family.DIM7_UNIT, F, a, seed=5, use_bsgs=False)
    assert c1.dumps(timestamp=False) == c2.dumps(timestamp=False)
    s1 = certify(Family.SU7_4_SPECIAL, seed=9).dumps(timestamp=False)
    s2 = certify(Family.SU7_4_SPECIAL, seed=9).dumps(timestamp=False)
    assert s1 == s2
    assert "timestamp" in json.loads(certify(Family.SU7_4_SPECIAL, use_bsgs=False).dumps())


def test_large_q_marks_generation_not_verified():
    cert = certify_at(Family.DIM7_UNIT, 5)
    gen = cert.check("generation")
    assert gen.verdict == "skip" and not gen.mandatory
    assert "not desk-verifiable" in gen.details["reason"]
    assert cert.passed


def test_min_diagonal_power():
    F = GF(5)
    I = Matrix.identity(F, 7)
    pair = build(Family.DIM7_ORTH, F, 3).with_matrices(I, I)
    assert min_diagonal_power(pair) == 1


def _mutants(pair):
    F = pair.field
    for which in ("x", "y"):
        M = getattr(pair, which)
        for i in range(M.n):
            for j in range(M.n):
                arr = M.a.copy()
                arr[i, j] = F.add(int(arr[i, j]), 1)
                mutated = Matrix(F, arr)
                yield (which, i, j), (pair.with_matrices(mutated, pair.y) if which == "x"
                                      else pair.with_matrices(pair.x, mutated))


@pytest.mark.parametrize("family,q", [
    (Family.SP6_EVEN, 4), (Family.DIM7_ORTH, 7), (Family.DIM7_UNIT, 3),
    (Family.SP6_3_SPECIAL, None), (Family.SU7_4_SPECIAL, None), (Family.OM7_3_SPECIAL, None),
    (Family.OM7_5_SPECIAL, None), (Family.SL7_VARIANT, 5),
])
def test_single_entry_mutation_is_caught(family, q):
    if q is None:
        pair = build(family)
    else:
        F = field_for(family, q)
        pair = build(family, F, search_parameter(family, F))
    assert certify_pair(pair, use_bsgs=False).passed
    for where, mutant in _mutants(pair):
        cert = certify_pair(mutant, use_bsgs=False)
        if cert.passed:
            # a few corruptions keep every cheap invariant; the order computation catches them
            cert = certify_pair(mutant)
        assert not cert.passed, where


def test_proof_identity_sweep_small():
    rep = proof_identity_sweep(5)
    assert rep.ok, [(i.identity, i.q, i.failures[:2]) for i in rep.failed()]
    names = {i.identity for i in rep.items}
    assert {"det-M1", "det-M2", "sp6-char-poly", "dim7-char-poly", "commutator-power-entry", "wall-determinant"} <= names


def test_special_branch_polynomials():
    checks = special_branch_checks()
    assert [c.name for c in checks] == ["chi-wz-p7", "chi-wz-p211", "chi-wz2-p53"]
    assert all(c.verdict == PASS for c in checks)


def test_unitary_table_rows():
    rows = {r.q: r for r in unitary_table()}
    assert sorted(rows) == [3, 4, 5, 7, 8, 9, 11, 13]
    # t^2 + t - 2 = (t - 1)(t + 2) is not irreducible over F_3 or F_13
    assert not rows[3].ok and not rows[13].ok
    assert "reducible" in rows[3].detail
    assert all(rows[q].ok for q in (4, 5, 7, 8, 9, 11))


def test_table_row_degree_check():
    row = table_row(5, [1, 1, 1, 1])
    assert not row.ok
