"""Verification pipelines for each generator family and the sweep of closed-form identities.

A pipeline runs its checks cheap-to-expensive and records a verdict for each.
Every failed check carries the data that made it fail.
"""

from __future__ import annotations

import datetime as _dt
import json
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import __version__
from .field import FieldElem, FieldSpec, GF, generates_field, prime_power
from .forms import (
    FormError,
    dim7_wall_basis,
    dim7_wall_det_expected,
    dim7_wall_gram_expected,
    invariant_forms,
    invariant_quadratic_char2,
    orthogonal_gram_dim7,
    preserves_form,
    spinor_norm_in_omega,
    wall_form,
)
from .generators import (
    Family,
    GeneratorPair,
    base_q,
    build,
    check_conditions,
    field_for,
    dim7_matrices,
    search_parameter,
    sp6_gram,
    sp6_matrices,
)
from .groupcalc import (
    DEFAULT_BUDGET,
    bsgs,
    center_order,
    chain_center_order,
    classical_order,
    point_count,
)
from .matrix import Matrix, char_poly, commutator, element_order, invariant_factors, min_poly, projective_order, spanning_dimension
from .polyring import Poly, discriminant

PASS, FAIL, SKIP = "pass", "fail", "skip"


class PreconditionError(ValueError):
    pass


@dataclass
class Check:
    name: str
    verdict: str
    details: dict = dc_field(default_factory=dict)
    mandatory: bool = True

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "details": self.details}


@dataclass
class Certificate:
    family: Family
    field: FieldSpec
    q: int
    a: FieldElem | None
    b: FieldElem | None
    seed: int
    checks: list[Check] = dc_field(default_factory=list)
    order_computed: int | None = None
    order_expected: int | None = None
    runtime: dict = dc_field(default_factory=dict)

    @property
    def overall(self) -> str:
        bad = any(c.verdict == FAIL for c in self.checks if c.mandatory)
        return FAIL if bad else PASS

    @property
    def passed(self) -> bool:
        return self.overall == PASS

    def check(self, name: str) -> Check | None:
        return next((c for c in self.checks if c.name == name), None)

    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if c.verdict == FAIL]

    def to_json(self, timestamp: bool = True) -> dict:
        F = self.field
        out = {
            "family": self.family.value,
            "q": self.q,
            "p": F.p,
            "n": F.n,
            "modulus": F.to_string(),
            "a": str(self.a) if self.a is not None else None,
            "b": str(self.b) if self.b is not None else None,
            "checks": [c.to_json() for c in self.checks],
            "order": {"computed": _big(self.order_computed), "expected": _big(self.order_expected)},
            "seed": self.seed,
            "version": __version__,
            "overall": self.overall,
        }
        if timestamp:
            out["timestamp"] = {
                "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
                "runtime_seconds": self.runtime,
            }
        return out

    def dumps(self, timestamp: bool = True) -> str:
        return json.dumps(self.to_json(timestamp), indent=2, sort_keys=False)

    def text_lines(self) -> list[str]:
        lines = []
        for c in self.checks:
            detail = "; ".join(f"{k}={v}" for k, v in c.details.items())
            lines.append(f"CHECK {c.name}: {c.verdict.upper()} {detail}".rstrip())
        lines.append(f"OVERALL: {self.overall.upper()}")
        return lines


def _big(v):
    # decimal strings keep orders exact in every JSON consumer
    return None if v is None else str(v)


class _Runner:
    def __init__(self, cert: Certificate, keep_going: bool):
        self.cert = cert
        self.keep_going = keep_going
        self.stopped = False

    def run(self, name: str, fn, mandatory: bool = True):
        if self.stopped:
            self.cert.checks.append(Check(name, SKIP, {"reason": "earlier mandatory check failed"}, mandatory))
            return
        t0 = time.perf_counter()
        try:
            verdict, details = fn()
        except (ArithmeticError, ValueError, RuntimeError) as exc:
            # e.g. a corrupted generator that is singular; the error is the witness
            verdict, details = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        self.cert.runtime[name] = round(time.perf_counter() - t0, 4)
        if verdict is True:
            verdict = PASS
        elif verdict is False:
            verdict = FAIL
        self.cert.checks.append(Check(name, verdict, details, mandatory))
        if verdict == FAIL and mandatory and not self.keep_going:
            self.stopped = True


# -- small helpers ---------------------------------------------------------------------


def _fmt(x) -> str:
    return repr(x)


def poly_from(F: FieldSpec, coeffs) -> Poly:
    """Poly from ascending coefficients given as ints or FieldElems."""
    return Poly(F, [F(c).v for c in coeffs])


def sp6_char_poly_expected(F: FieldSpec, a) -> Poly:
    a = F(a)
    return poly_from(F, [1, a + 1, 1, 1, 1, a + 1, 1])


def dim7_char_poly_expected(F: FieldSpec, a, b) -> Poly:
    a, b = F(a), F(b)
    return poly_from(F, [-1, 0, 1, b - 1, 1 - a, -1, 0, 1])


def orth_char_poly_expected(F: FieldSpec, a) -> Poly:
    a = F(a)
    return poly_from(F, [-1, 0, 1, a - 1, -(a - 1), -1, 0, 1])


def orth_commutator_char_poly_expected(F: FieldSpec, a) -> Poly:
    a = F(a)
    c = a * a - 4 * a + 3
    return poly_from(F, [-1, -1, -1, c, -c, 1, 1, 1])


def orth_char_poly_disc_expected(F: FieldSpec, a) -> FieldElem:
    a = F(a)
    return (a - 1) * (a - 5) ** 3 * (27 * a * a - 4 * a - 148) ** 2


def orth_commutator_disc_expected(F: FieldSpec, a) -> FieldElem:
    a = F(a)
    return (a - 2) ** 6 * (a + 2) ** 3 * (a - 6) ** 3 * (27 * a * a - 108 * a + 76) ** 2


def sp6_invariant_factors_expected(F: FieldSpec) -> tuple[list[Poly], list[Poly]]:
    return [poly_from(F, [1, 0, 1])] * 3, [poly_from(F, [1, 0, 0, 1])] * 2


def dim7_invariant_factors_expected(F: FieldSpec) -> tuple[list[Poly], list[Poly]]:
    x = [poly_from(F, [1, 1])] + [poly_from(F, [-1, 0, 1])] * 3
    y = [poly_from(F, [1, 1, 1])] * 2 + [poly_from(F, [-1, 0, 0, 1])]
    return x, y


def torus_identity_dim6(chi: Poly) -> bool:
    """f3 = f1^2 for chi = t^6 + sum f_j t^j + 1."""
    f1, f3 = chi.coeff(1), chi.coeff(3)
    return f3 == f1 * f1


def torus_identity_dim7(chi: Poly) -> bool:
    """f3 = f1 + f1^2 + f2 for chi = t^7 + sum f_j t^j - 1."""
    f1, f2, f3 = chi.coeff(1), chi.coeff(2), chi.coeff(3)
    return f3 == f1 + f1 * f1 + f2


def g2_cascade(pair: GeneratorPair) -> tuple[bool, dict]:
    """First semisimple element among z, w, wz, wz^2 violating the torus identity."""
    z, w = pair.z, pair.w
    tried = []
    for name, g in (("z", z), ("w", w), ("wz", w @ z), ("wz^2", w @ z @ z)):
        chi = char_poly(g)
        disc = discriminant(chi)
        entry = {"element": name, "discriminant": str(disc), "identity_holds": torus_identity_dim7(chi)}
        tried.append(entry)
        if disc != 0 and not entry["identity_holds"]:
            return True, {"witness": name, "tried": tried}
    return False, {"tried": tried}


def min_diagonal_power(pair: GeneratorPair, cap: int = 32) -> int | None:
    """Least k <= cap with (xy)^k diagonal, else None."""
    z = pair.x @ pair.y
    D = z
    for k in range(1, cap + 1):
        if D.is_diagonal():
            return k
        D = D @ z
    return None


def _orders_check(pair: GeneratorPair, allow_minus: bool = False):
    def fn():
        n = pair.x.n
        I = Matrix.identity(pair.field, n)
        x2 = pair.x @ pair.x
        y3 = pair.y @ pair.y @ pair.y
        x_ok = x2 == I or (allow_minus and x2 == -I)
        det_x, det_y = pair.x.det(), pair.y.det()
        ok = x_ok and y3 == I and det_x == 1 and det_y == 1 and not pair.x.is_scalar() and not pair.y.is_scalar()
        d = {"x^2": "I" if x2 == I else ("-I" if x2 == -I else "other"),
             "y^3": "I" if y3 == I else "other", "det(x)": str(det_x), "det(y)": str(det_y)}
        return ok, d
    return fn


def _inv_check(pair: GeneratorPair, expected):
    def fn():
        ex, ey = expected
        gx, gy = invariant_factors(pair.x), invariant_factors(pair.y)
        ok = gx == ex and gy == ey
        return ok, {"x": [_fmt(f) for f in gx], "y": [_fmt(f) for f in gy]}
    return fn


def _charpoly_check(g, expected: Poly, require_cyclic: bool = True):
    # g may be a thunk so that building it (e.g. inverting) happens inside the check
    def fn():
        M = g() if callable(g) else g
        cp = char_poly(M)
        ok = cp == expected
        d = {"computed": _fmt(cp), "expected": _fmt(expected)}
        if require_cyclic:
            mp = min_poly(M)
            d["min_equals_char"] = mp == cp
            ok = ok and mp == cp
        return ok, d
    return fn


def _spanning_check(pair: GeneratorPair):
    def fn():
        n = pair.x.n
        dim = spanning_dimension([pair.x, pair.y])
        return dim == n * n, {"dimension": dim, "expected": n * n}
    return fn


def _form_check(pair: GeneratorPair, sigma: str, kind: str):
    def fn():
        sol = invariant_forms(pair, sigma)
        ok = sol.dimension == 1 and sol.kinds[0] == kind and sol.nondegenerate[0]
        d = {"dimension": sol.dimension, "kinds": sol.kinds, "nondegenerate": sol.nondegenerate}
        if sol.dimension == 1:
            d["form"] = sol.basis[0].to_json()
        return ok, d
    return fn


def _exclusion_checks(run: _Runner, pair: GeneratorPair):
    def diag():
        k = min_diagonal_power(pair, 32)
        return k is None or k >= 13, {"least_diagonal_power": k, "cap": 32}

    def proj():
        k = projective_order(pair.z, cap=12)
        return k is None, {"projective_order_at_most_12": k}

    run.run("diagonal-power", diag)
    run.run("projective-order", proj)


def _bsgs_check(run: _Runner, cert: Certificate, pair: GeneratorPair, tag: str, q: int,
                use_bsgs: bool, budget: int, projective: bool = False):
    if not use_bsgs:
        run.run("generation", lambda: (SKIP, {"reason": "order computation disabled"}), mandatory=False)
        return
    if point_count([pair.x]) > budget:
        run.run("generation", lambda: (SKIP, {
            "reason": "generation: not desk-verifiable, property suite only",
            "points": point_count([pair.x]), "budget": budget}), mandatory=False)
        return

    def fn():
        expected = classical_order(tag, q).value
        chain = bsgs([pair.x, pair.y], seed=cert.seed, budget=budget, target=expected)
        cert.order_computed, cert.order_expected = chain.order, expected
        d = {"computed": str(chain.order), "expected": str(expected), "group": tag,
             "orbit_sizes": chain.orbit_sizes, "sifts": chain.sifts}
        ok = chain.order == expected
        if projective:
            z = chain_center_order(chain, pair.field, pair.x.n)
            d["center_order"] = z
            d["projective_order"] = str(chain.order // z)
            ok = ok and z == center_order(tag, q)
        return ok, d

    run.run("generation", fn)


def _new_cert(pair: GeneratorPair, seed: int) -> Certificate:
    return Certificate(pair.family, pair.field, pair.q, pair.a, pair.b, seed)


# -- family pipelines -------------------------------------------------------------------


def certify_sp6(field: FieldSpec, a, seed: int = 0, use_bsgs: bool = True,
                budget: int = DEFAULT_BUDGET, keep_going: bool = False,
               pair: GeneratorPair | None = None) -> Certificate:
    F = field
    if F.p != 2:
        raise PreconditionError("sp6 needs even q")
    a = F(a)
    if a == 0:
        raise PreconditionError("sp6 needs a != 0")
    pair = pair or build(Family.SP6_EVEN, F, a)
    cert = _new_cert(pair, seed)
    run = _Runner(cert, keep_going)
    J = sp6_gram(F, a)

    run.run("orders", _orders_check(pair))
    run.run("gram", lambda: (preserves_form(pair.x, J) and preserves_form(pair.y, J) and J == J.T
                             and J.det() != 0, {"J": J.to_json()}))
    run.run("invariant-factors", _inv_check(pair, sp6_invariant_factors_expected(F)))
    run.run("char-poly", _charpoly_check(pair.z, sp6_char_poly_expected(F, a)))
    run.run("spanning", _spanning_check(pair))

    def quad():
        sol = invariant_quadratic_char2(pair)
        return sol.count == 0, {"solutions": sol.count}

    run.run("quadratic-form", quad)

    def g2():
        chi = char_poly(pair.z)
        disc = discriminant(chi)
        holds = torus_identity_dim6(chi)
        return disc != 0 and not holds, {"discriminant": str(disc), "f3_equals_f1_squared": holds}

    run.run("g2-torus", g2)
    run.run("field-generation", lambda: (generates_field(a), {"a": str(a), "q": F.q}))
    _bsgs_check(run, cert, pair, "Sp6", F.q, use_bsgs, budget)
    return cert


def _conditions_check(family: Family, F: FieldSpec, a):
    def fn():
        rep = check_conditions(family, F, a)
        return rep.ok, {c.name: c.passed for c in rep.clauses}
    return fn


def certify_u7(field: FieldSpec, a, seed: int = 0, use_bsgs: bool = True,
               budget: int = DEFAULT_BUDGET, keep_going: bool = False,
               pair: GeneratorPair | None = None) -> Certificate:
    F = field
    if F.n % 2:
        raise PreconditionError(f"u7 needs the field F_(q^2), got {F!r}")
    q = base_q(Family.DIM7_UNIT, F)
    a = F(a)
    if a ** q == a:
        raise PreconditionError("u7 needs a in F_(q^2) \\ F_q")
    pair = pair or build(Family.DIM7_UNIT, F, a)
    cert = _new_cert(pair, seed)
    run = _Runner(cert, keep_going)
    run.run("conditions", _conditions_check(Family.DIM7_UNIT, F, a))
    run.run("orders", _orders_check(pair))
    run.run("invariant-factors", _inv_check(pair, dim7_invariant_factors_expected(F)))
    run.run("char-poly", _charpoly_check(pair.z, dim7_char_poly_expected(F, a, pair.b)))
    run.run("spanning", _spanning_check(pair))
    run.run("hermitian-form", _form_check(pair, "q-power", "hermitian"))
    _exclusion_checks(run, pair)
    _bsgs_check(run, cert, pair, "SU7", q, use_bsgs, budget)
    return cert


def certify_o7(field: FieldSpec, a, seed: int = 0, use_bsgs: bool = True,
               budget: int = DEFAULT_BUDGET, keep_going: bool = False,
               pair: GeneratorPair | None = None) -> Certificate:
    F = field
    if F.p == 2:
        raise PreconditionError("o7 needs odd q")
    a = F(a)
    pair = pair or build(Family.DIM7_ORTH, F, a)
    cert = _new_cert(pair, seed)
    run = _Runner(cert, keep_going)
    run.run("conditions", _conditions_check(Family.DIM7_ORTH, F, a))
    run.run("orders", _orders_check(pair))
    run.run("char-poly", _charpoly_check(pair.z, orth_char_poly_expected(F, a)))
    run.run("commutator-char-poly", _charpoly_check(lambda: pair.w, orth_commutator_char_poly_expected(F, a), require_cyclic=False))

    def discs():
        dz, dw = discriminant(char_poly(pair.z)), discriminant(char_poly(pair.w))
        ez, ew = orth_char_poly_disc_expected(F, a), orth_commutator_disc_expected(F, a)
        return dz == ez and dw == ew, {"disc_z": str(dz), "expected_z": str(ez),
                                       "disc_w": str(dw), "expected_w": str(ew)}

    run.run("discriminants", discs)
    run.run("spanning", _spanning_check(pair))
    run.run("symmetric-form", _form_check(pair, "identity", "symmetric"))

    def spinor():
        B = orthogonal_gram_dim7(F, a)
        wf = wall_form(pair.x, B, dim7_wall_basis(F, a), require_nondegenerate=False)
        expected = dim7_wall_det_expected(F, a)
        d = {"wall_det": str(wf.det), "expected": str(expected),
             "gram_matches_closed_form": wf.gram == dim7_wall_gram_expected(F, a)}
        try:
            sq = spinor_norm_in_omega(pair.x, B)
        except FormError as exc:
            d["error"] = str(exc)
            return False, d
        d["spinor_norm_square"] = sq
        return wf.det == expected and sq, d

    run.run("spinor-norm", spinor)

    def sp62():
        D = pair.w ** 7
        expected = (a - 2) ** 2 * (1 - a)
        return not D.is_identity() and D[6, 0] == expected, {
            "entry_7_1": str(D[6, 0]), "expected": str(expected), "w^7_is_identity": D.is_identity()}

    run.run("commutator-order", sp62)
    run.run("g2-torus", lambda: g2_cascade(pair))
    _exclusion_checks(run, pair)
    _bsgs_check(run, cert, pair, "Omega7", F.q, use_bsgs, budget)
    return cert


def certify_sl7(field: FieldSpec, a, seed: int = 0, use_bsgs: bool = True,
                budget: int = DEFAULT_BUDGET, keep_going: bool = False,
               pair: GeneratorPair | None = None) -> Certificate:
    """The b = 0 variant; generation itself is left to the property suite."""
    F = field
    a = F(a)
    pair = pair or build(Family.SL7_VARIANT, F, a)
    cert = _new_cert(pair, seed)
    run = _Runner(cert, keep_going)
    run.run("conditions", _conditions_check(Family.SL7_VARIANT, F, a))
    run.run("orders", _orders_check(pair))
    run.run("invariant-factors", _inv_check(pair, dim7_invariant_factors_expected(F)))
    run.run("char-poly", _charpoly_check(pair.z, dim7_char_poly_expected(F, a, 0)))
    run.run("spanning", _spanning_check(pair))
    run.run("generation", lambda: (SKIP, {"reason": "b = 0 variant: property suite only"}), mandatory=False)
    return cert


def certify_special(family: Family, seed: int = 0, use_bsgs: bool = True,
                    budget: int = DEFAULT_BUDGET, keep_going: bool = False,
               pair: GeneratorPair | None = None) -> Certificate:
    family = Family(family)
    if not family.special:
        raise PreconditionError(f"{family.value} is not one of the explicit pairs")
    pair = pair or build(family)
    F = pair.field
    cert = _new_cert(pair, seed)
    run = _Runner(cert, keep_going)
    run.run("orders", _orders_check(pair, allow_minus=family is Family.SP6_3_SPECIAL))
    run.run("spanning", _spanning_check(pair))
    if family is Family.SP6_3_SPECIAL:
        run.run("alternating-form", _form_check(pair, "identity", "alternating"))
        _bsgs_check(run, cert, pair, "Sp6", 3, use_bsgs, budget, projective=True)
    elif family is Family.SU7_4_SPECIAL:
        I = Matrix.identity(F, 7)
        run.run("unitary", lambda: (preserves_form(pair.x, I, "q-power") and preserves_form(pair.y, I, "q-power"),
                                    {"form": "identity"}))
        x, y = pair.x, pair.y
        y2 = y @ y
        g = (x @ y2 @ x @ y) ** 2 @ (x @ y2) ** 3
        run.run("element-43", lambda: (element_order(g) == 43, {"order": element_order(g)}))
        _bsgs_check(run, cert, pair, "SU7", 2, use_bsgs, budget)
    else:
        run.run("symmetric-form", _form_check(pair, "identity", "symmetric"))

        def spinor():
            sol = invariant_forms(pair)
            if sol.dimension != 1:
                return False, {"form_dimension": sol.dimension}
            B = sol.basis[0]
            wf = wall_form(pair.x, B)
            sq = spinor_norm_in_omega(pair.x, B)
            # an element of odd order always has square spinor norm
            odd = (pair.y @ pair.y @ pair.y).is_identity()
            return sq and odd, {"wall_det": str(wf.det), "spinor_norm_square": sq, "y_odd_order": odd}

        run.run("spinor-norm", spinor)
        _bsgs_check(run, cert, pair, "Omega7", F.p, use_bsgs, budget)
    return cert


PIPELINES = {
    Family.SP6_EVEN: certify_sp6,
    Family.DIM7_UNIT: certify_u7,
    Family.DIM7_ORTH: certify_o7,
    Family.SL7_VARIANT: certify_sl7,
}


def certify(family: Family, field: FieldSpec | None = None, a=None, **kw) -> Certificate:
    family = Family(family)
    if family.special:
        return certify_special(family, **kw)
    if field is None or a is None:
        raise PreconditionError(f"{family.value} needs a field and a parameter")
    return PIPELINES[family](field, a, **kw)


def certify_pair(pair: GeneratorPair, **kw) -> Certificate:
    """Run the family pipeline on the given matrices instead of the literal ones.

    The mutation tests use this to feed corrupted generators through every check.
    """
    if pair.family.special:
        return certify_special(pair.family, pair=pair, **kw)
    return PIPELINES[pair.family](pair.field, pair.a, pair=pair, **kw)


# families that fall back to an explicit pair when no uniform parameter exists
ROUTES = {
    (Family.DIM7_UNIT, 2): Family.SU7_4_SPECIAL,
    (Family.DIM7_ORTH, 3): Family.OM7_3_SPECIAL,
    (Family.DIM7_ORTH, 5): Family.OM7_5_SPECIAL,
}


def certify_at(family: Family, q: int, strategy: str = "exhaustive", **kw) -> Certificate:
    """Search a parameter at base field size q and certify, routing to an explicit pair if needed."""
    family = Family(family)
    if (family, q) in ROUTES:
        return certify_special(ROUTES[(family, q)], **kw)
    F = field_for(family, q)
    a = search_parameter(family, F, strategy)
    if a is None:
        raise PreconditionError(f"no parameter for {family.value} at q = {q}")
    return certify(family, F, a, **kw)


# -- exhaustive identity sweep ------------------------------------------------------------


@dataclass
class SweepItem:
    identity: str
    q: int
    cases: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cases > 0 and not self.failures


@dataclass
class SweepReport:
    items: list[SweepItem]

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.items)

    def failed(self) -> list[SweepItem]:
        return [i for i in self.items if not i.ok]

    def to_json(self) -> dict:
        return {"ok": self.ok, "items": [
            {"identity": i.identity, "q": i.q, "cases": i.cases, "failures": i.failures[:10]} for i in self.items]}


def prime_powers(q_max: int, parity: str | None = None) -> list[int]:
    out = []
    for q in range(2, q_max + 1):
        try:
            p, _ = prime_power(q)
        except ValueError:
            continue
        if parity == "even" and p != 2 or parity == "odd" and p == 2:
            continue
        out.append(q)
    return out


def _sweep(name: str, q: int, cases, test) -> SweepItem:
    item = SweepItem(name, q)
    for case in cases:
        item.cases += 1
        ok, info = test(case)
        if not ok:
            item.failures.append(info)
    return item


def sp6_identity_items(q: int) -> list[SweepItem]:
    F = GF(q)
    nonzero = F.nonzero()
    items = []

    def char_poly_z(a):
        x, y = sp6_matrices(F, a)
        cp = char_poly(x @ y)
        return cp == sp6_char_poly_expected(F, a) and min_poly(x @ y) == cp, {"a": str(a), "char": _fmt(cp)}

    def disc6(a):
        x, y = sp6_matrices(F, a)
        d = discriminant(char_poly(x @ y))
        return d == 1, {"a": str(a), "disc": str(d)}

    def inv_factors(a):
        pair = build(Family.SP6_EVEN, F, a)
        ex, ey = sp6_invariant_factors_expected(F)
        return invariant_factors(pair.x) == ex and invariant_factors(pair.y) == ey, {"a": str(a)}

    def m1(a):
        x, y = sp6_matrices(F, a)
        u = np.array([1, 0, 0, 0, 0, 0], dtype=np.int64)
        yx = y @ x
        cols = [u, x.apply(u), yx.apply(u), (x @ yx).apply(u), (yx @ yx).apply(u), (x @ yx @ yx).apply(u)]
        d = Matrix(F, np.array(cols).T).det()
        return d == a, {"a": str(a), "det": str(d)}

    def m2(case):
        a, x1 = case
        x, y = sp6_matrices(F, a)
        u = np.array([x1.v, 1, 0, 0, 0, a.v], dtype=np.int64)
        y2 = y @ y
        cols = [u, x.apply(u), (y @ x).apply(u), (x @ y @ x).apply(u), (x @ y2 @ x).apply(u), (y2 @ x).apply(u)]
        d = Matrix(F, np.array(cols).T).det()
        expected = a ** 3 * (x1 + a + 1) ** 2
        return d == expected, {"a": str(a), "x1": str(x1), "det": str(d), "expected": str(expected)}

    items.append(_sweep("sp6-char-poly", q, nonzero, char_poly_z))
    items.append(_sweep("sp6-char-poly-discriminant", q, nonzero, disc6))
    items.append(_sweep("sp6-invariant-factors", q, nonzero, inv_factors))
    items.append(_sweep("det-M1", q, nonzero, m1))
    items.append(_sweep("det-M2", q, [(a, x1) for a in nonzero for x1 in F.elements()], m2))
    return items


def dim7_identity_items(q: int) -> list[SweepItem]:
    F = GF(q)
    els = F.elements()
    pairs = [(a, b) for a in els for b in els]
    items = []

    def char_poly_z(case):
        a, b = case
        x, y = dim7_matrices(F, a, b)
        cp = char_poly(x @ y)
        return cp == dim7_char_poly_expected(F, a, b), {"a": str(a), "b": str(b), "char": _fmt(cp)}

    def inv_factors_x(a):
        x, _ = dim7_matrices(F, a, F.zero)
        return invariant_factors(x) == dim7_invariant_factors_expected(F)[0], {"a": str(a), "x": [_fmt(f) for f in invariant_factors(x)]}

    def inv_factors_y(s):
        # y depends on a and b only through a + b
        _, y = dim7_matrices(F, s, F.zero)
        return invariant_factors(y) == dim7_invariant_factors_expected(F)[1], {"a+b": str(s)}

    def diag7(case):
        a, b = case
        x, y = dim7_matrices(F, a, b)
        D = (x @ y) ** 7
        return D[2, 0] == 1, {"a": str(a), "b": str(b), "D31": str(D[2, 0])}

    items.append(_sweep("dim7-char-poly", q, pairs, char_poly_z))
    items.append(_sweep("dim7-invariant-factors-x", q, els, inv_factors_x))
    items.append(_sweep("dim7-invariant-factors-y", q, els, inv_factors_y))
    if q <= 9:
        items.append(_sweep("diagonal-power-entry", q, pairs, diag7))
    if F.p == 2:
        return items

    def orth(a):
        x, y = dim7_matrices(F, a, a)
        z, w = x @ y, commutator(x, y)
        cz, cw = char_poly(z), char_poly(w)
        return cz == orth_char_poly_expected(F, a) and cw == orth_commutator_char_poly_expected(F, a), {
            "a": str(a), "char_z": _fmt(cz), "char_w": _fmt(cw)}

    def discs(a):
        x, y = dim7_matrices(F, a, a)
        dz = discriminant(char_poly(x @ y))
        dw = discriminant(char_poly(commutator(x, y)))
        return dz == orth_char_poly_disc_expected(F, a) and dw == orth_commutator_disc_expected(F, a), {
            "a": str(a), "disc_z": str(dz), "disc_w": str(dw)}

    def d71(a):
        x, y = dim7_matrices(F, a, a)
        D = commutator(x, y) ** 7
        expected = (a - 2) ** 2 * (1 - a)
        return D[6, 0] == expected, {"a": str(a), "entry_7_1": str(D[6, 0]), "expected": str(expected)}

    def wall(a):
        x, _ = dim7_matrices(F, a, a)
        B = orthogonal_gram_dim7(F, a)
        wf = wall_form(x, B, dim7_wall_basis(F, a), require_nondegenerate=False)
        ok = wf.gram == dim7_wall_gram_expected(F, a) and wf.det == dim7_wall_det_expected(F, a)
        return ok, {"a": str(a), "det": str(wf.det)}

    items.append(_sweep("orth-char-polys", q, els, orth))
    items.append(_sweep("orth-discriminants", q, els, discs))
    items.append(_sweep("commutator-power-entry", q, els, d71))
    items.append(_sweep("wall-determinant", q, els, wall))
    return items


def proof_identity_sweep(q_max: int = 13) -> SweepReport:
    """Exhaustive check of every closed-form identity over all fields GF(q), q <= q_max."""
    items = []
    for q in prime_powers(q_max):
        if q % 2 == 0:
            items.extend(sp6_identity_items(q))
        items.extend(dim7_identity_items(q))
    return SweepReport(items)


# -- the large-prime branches of the G2 exclusion -----------------------------------------


WZ_AT_5 = [-1, -3, 16, 82, -82, -16, 3, 1]          # ascending
WZ2_AT_47 = [-1, -14, -25, -6, 6, 25, 14, 1]
DISC_W_AT_5 = -(3**6) * 7**3 * 211**2


def special_branch_checks() -> list[Check]:
    """Characteristic polynomials of wz (a = 5, p = 7, 211) and wz^2 (p = 53, a = 47)."""
    out = []
    for p in (7, 211):
        F = GF(p)
        x, y = dim7_matrices(F, 5, 5)
        w, z = commutator(x, y), x @ y
        chi = char_poly(w @ z)
        exp = poly_from(F, WZ_AT_5)
        disc = discriminant(chi)
        ok = chi == exp and disc != 0 and not torus_identity_dim7(chi)
        dw = discriminant(char_poly(w))
        out.append(Check(f"chi-wz-p{p}", PASS if ok else FAIL, {
            "char": _fmt(chi), "discriminant": str(disc), "disc_w": str(dw),
            "disc_w_expected": str(F(DISC_W_AT_5))}))
    F = GF(53)
    x, y = dim7_matrices(F, 47, 47)
    w, z = commutator(x, y), x @ y
    chi = char_poly(w @ z @ z)
    disc = discriminant(chi)
    ok = chi == poly_from(F, WZ2_AT_47) and disc != 0 and not torus_identity_dim7(chi)
    out.append(Check("chi-wz2-p53", PASS if ok else FAIL, {"char": _fmt(chi), "discriminant": str(disc)}))
    return out


# -- the minimum-polynomial table for the unitary family ----------------------------------


# base field sizes q and the minimum polynomial of a over F_p (ascending integer coefficients)
UNITARY_TABLE = [
    (3, [-2, 1, 1]),
    (4, [-1, 0, 0, 1, 1]),
    (5, [-3, 1, 1]),
    (7, [3, 1, 1]),
    (8, [1, 1, 0, 0, 0, 0, 1]),
    (9, [-1, 0, 0, 1, 1]),
    (11, [-3, 1, 1]),
    (13, [-2, 1, 1]),
]


@dataclass
class TableRow:
    q: int
    poly: str
    ok: bool
    detail: str


def signed_poly(coeffs: list[int]) -> str:
    """Integer polynomial as written, e.g. t^2 + t - 2."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        mag = abs(c)
        body = str(mag) if not mon else (mon if mag == 1 else f"{mag}*{mon}")
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {b}" for s, b in terms[1:]])


def table_row(q: int, coeffs: list[int]) -> TableRow:
    """Realize a as the class of t in F_p[t]/(m_a) and test the unitary conditions."""
    p, k = prime_power(q)
    P = Poly.from_ints(GF(p), coeffs)
    text = signed_poly(coeffs)
    if P.deg != 2 * k:
        return TableRow(q, text, False, f"degree {P.deg} does not match F_(q^2) = GF({p}^{2 * k})")
    from .polyring import is_irreducible

    if not is_irreducible(P):
        return TableRow(q, text, False, f"m_a is reducible over F_{p}, so it is not a minimum polynomial")
    F = GF(p, 2 * k, [c % p for c in coeffs])
    a = F.gen
    if a ** q == a:
        return TableRow(q, text, False, "a lies in F_q")
    rep = check_conditions(Family.DIM7_UNIT, F, a)
    detail = ", ".join(f"{c.name}: {'pass' if c.passed else 'fail'}" for c in rep.clauses)
    return TableRow(q, text, rep.ok, detail)


def unitary_table() -> list[TableRow]:
    return [table_row(q, c) for q, c in UNITARY_TABLE]
