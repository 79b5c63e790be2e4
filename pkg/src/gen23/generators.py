"""The (2,3)-generator pairs, their parameter conditions and reducibility witnesses."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import (
    FieldElem,
    FieldSpec,
    GF,
    element_order,
    extension_with_omega,
    frobenius,
    generates_field,
    is_square,
    omega,
)
from .matrix import Matrix, commutator, span_basis, vector


class Family(enum.Enum):
    SP6_EVEN = "sp6"
    DIM7_ORTH = "o7"
    DIM7_UNIT = "u7"
    SP6_3_SPECIAL = "sp6-3"
    SU7_4_SPECIAL = "su7-4"
    OM7_3_SPECIAL = "o7-3"
    OM7_5_SPECIAL = "o7-5"
    SL7_VARIANT = "sl7"

    @property
    def dim(self) -> int:
        return 6 if self in (Family.SP6_EVEN, Family.SP6_3_SPECIAL) else 7

    @property
    def special(self) -> bool:
        return self in SPECIAL_FIELDS

    @property
    def unitary(self) -> bool:
        return self in (Family.DIM7_UNIT, Family.SU7_4_SPECIAL)


# (p, n) of the fixed field of each explicit pair
SPECIAL_FIELDS = {
    Family.SP6_3_SPECIAL: (3, 1),
    Family.SU7_4_SPECIAL: (2, 2),
    Family.OM7_3_SPECIAL: (3, 1),
    Family.OM7_5_SPECIAL: (5, 1),
}


class BuildError(ValueError):
    pass


def field_for(family: Family, q: int) -> FieldSpec:
    """Default matrix field for a family at base field size q (F_{q^2} for unitary)."""
    if family.special:
        p, n = SPECIAL_FIELDS[family]
        return GF(p, n)
    F = GF(q)
    if family.unitary:
        return GF(F.p, 2 * F.n)
    return F


def base_q(family: Family, spec: FieldSpec) -> int:
    if family.unitary:
        if spec.n % 2:
            raise BuildError(f"unitary family needs a field of square order, got {spec!r}")
        return spec.p ** (spec.n // 2)
    return spec.q


@dataclass
class GeneratorPair:
    family: Family
    field: FieldSpec
    a: FieldElem | None
    b: FieldElem | None
    x: Matrix
    y: Matrix
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    @property
    def q(self) -> int:
        return base_q(self.family, self.field)

    @property
    def z(self) -> Matrix:
        if "z" not in self._cache:
            self._cache["z"] = self.x @ self.y
        return self._cache["z"]

    @property
    def w(self) -> Matrix:
        """The commutator [x, y] = x^-1 y^-1 x y."""
        if "w" not in self._cache:
            self._cache["w"] = commutator(self.x, self.y)
        return self._cache["w"]

    def with_matrices(self, x: Matrix, y: Matrix) -> "GeneratorPair":
        return GeneratorPair(self.family, self.field, self.a, self.b, x, y)


# -- literal matrices ---------------------------------------------------------------


def sp6_matrices(F: FieldSpec, a: FieldElem) -> tuple[Matrix, Matrix]:
    x = [[0, 0, 1, 0, 0, 0],
         [0, 0, 0, 1, 0, 0],
         [1, 0, 0, 0, 0, 0],
         [0, 1, 0, 0, 0, 0],
         [0, 0, 0, 0, 1, 0],
         [0, 0, 0, 0, a, 1]]
    y = [[1, 0, 0, 1, 1, 0],
         [0, 1, 0, 0, 0, 0],
         [0, 0, 0, 1, 0, 0],
         [0, 0, 1, 1, 0, 0],
         [0, a, 1, 1, 1, 1],
         [0, a, 1, 0, 1, 0]]
    return Matrix.from_rows(F, x), Matrix.from_rows(F, y)


def sp6_gram(F: FieldSpec, a: FieldElem) -> Matrix:
    """Alternating form fixed by the even-characteristic Sp6 pair."""
    return Matrix.from_rows(F, [
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, a, a + 1, 1],
        [0, 0, 0, 1, 0, 0],
        [0, a, 1, 0, 1, 1],
        [0, a + 1, 0, 1, 0, 1],
        [0, 1, 0, 1, 1, 0],
    ])


def dim7_matrices(F: FieldSpec, a: FieldElem, b: FieldElem) -> tuple[Matrix, Matrix]:
    x = [[0, 1, 0, 0, 0, 0, a],
         [1, 0, 0, 0, 0, 0, a],
         [0, 0, 0, 1, 0, 0, 0],
         [0, 0, 1, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 1, -1],
         [0, 0, 0, 0, 1, 0, -1],
         [0, 0, 0, 0, 0, 0, -1]]
    y = [[1, 0, -1, 0, -1, 0, a + b - 1],
         [0, 0, -1, 0, 0, 0, 0],
         [0, 1, -1, 0, 0, 0, 0],
         [0, 0, 0, 0, -1, 0, 0],
         [0, 0, 0, 1, -1, 0, 0],
         [0, 0, 0, 0, 0, 0, -1],
         [0, 0, 0, 0, 0, 1, -1]]
    return Matrix.from_rows(F, x), Matrix.from_rows(F, y)


def _sp6_3_special() -> tuple[Matrix, Matrix]:
    F = GF(3)
    x = [[-1, 0, 0, 1, 0, 0],
         [0, -1, 0, 0, 1, 0],
         [0, 0, 0, 0, 0, 1],
         [1, 0, 0, 1, 0, 0],
         [0, 1, 0, 0, 1, 0],
         [0, 0, -1, 0, 0, 0]]
    y = [[0, 0, 1, 1, 1, 1],
         [1, 0, 0, 1, 1, 1],
         [0, 1, 0, 1, 1, 1],
         [0, 0, 0, 0, 0, 1],
         [0, 0, 0, 1, 0, 0],
         [0, 0, 0, 0, 1, 0]]
    return Matrix.from_rows(F, x), Matrix.from_rows(F, y)


def _su7_4() -> tuple[Matrix, Matrix]:
    F = GF(4)
    w = omega(F)
    w2 = w * w
    x = [[0, 1, 0, 0, 0, 0, 0],
         [1, 0, 0, 0, 0, 0, 0],
         [0, 0, 1, 0, 0, 0, 0],
         [0, 0, 0, 1, 1, 0, w],
         [0, 0, 0, 1, 0, w2, w],
         [0, 0, 0, 0, w, 1, w2],
         [0, 0, 0, w2, w2, w, 0]]
    y = [[1, 0, 0, 0, 0, 0, 0],
         [0, 0, 0, 1, 0, 0, 0],
         [0, 1, 0, 0, 0, 0, 0],
         [0, 0, 1, 0, 0, 0, 0],
         [0, 0, 0, 0, 0, 0, 1],
         [0, 0, 0, 0, 1, 0, 0],
         [0, 0, 0, 0, 0, 1, 0]]
    return Matrix.from_rows(F, x), Matrix.from_rows(F, y)


def _om7_special(p: int) -> tuple[Matrix, Matrix]:
    F = GF(p)
    half = F(2).inverse()
    s = F(7) * half     # 7/2
    h = -half           # -1/2
    x = [[0, 0, 0, 1, 0, 0, 0],
         [0, 0, 0, 0, 1, 0, s],
         [0, 0, 0, 0, 0, 1, h],
         [1, 0, 0, 0, 0, 0, 0],
         [0, 1, 0, 0, 0, 0, s],
         [0, 0, 1, 0, 0, 0, h],
         [0, 0, 0, 0, 0, 0, -1]]
    y = [[1, 0, 0, 0, 0, 0, 0],
         [0, 1, 0, 0, 0, 0, 7],
         [0, 0, 1, 1, -1, 0, 0],
         [0, 0, 0, 0, -1, 0, 0],
         [0, 0, 0, 1, -1, 0, 0],
         [0, 0, 0, 0, 0, 0, -1],
         [0, 0, 0, 0, 0, 1, -1]]
    return Matrix.from_rows(F, x), Matrix.from_rows(F, y)


def build(family: Family, field: FieldSpec | None = None, a=None) -> GeneratorPair:
    """Literal generator matrices for a family over a field at parameter a."""
    family = Family(family)
    if family.special:
        F = field_for(family, 0)
        if field is not None and field is not F:
            raise BuildError(f"{family.value} is defined over {F!r} only")
        builders = {
            Family.SP6_3_SPECIAL: _sp6_3_special,
            Family.SU7_4_SPECIAL: _su7_4,
            Family.OM7_3_SPECIAL: lambda: _om7_special(3),
            Family.OM7_5_SPECIAL: lambda: _om7_special(5),
        }
        x, y = builders[family]()
        return GeneratorPair(family, F, None, None, x, y)

    if field is None or a is None:
        raise BuildError(f"{family.value} needs a field and a parameter a")
    F = field
    a = F(a)
    if family is Family.SP6_EVEN:
        if F.p != 2:
            raise BuildError("sp6 pair requires even characteristic")
        if a == 0:
            raise BuildError("sp6 pair requires a != 0")
        x, y = sp6_matrices(F, a)
        return GeneratorPair(family, F, a, a, x, y)
    if family is Family.DIM7_ORTH:
        if F.p == 2:
            raise BuildError("o7 pair requires odd characteristic")
        b = a
    elif family is Family.DIM7_UNIT:
        q = base_q(family, F)
        b = a ** q
    else:  # SL7_VARIANT
        b = F.zero
    x, y = dim7_matrices(F, a, b)
    return GeneratorPair(family, F, a, b, x, y)


# -- parameter conditions -------------------------------------------------------------


def irreducibility_clause_i(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * a - a * b + b * b + 2 * a + 2 * b + 4


def irreducibility_clause_ii(a: FieldElem, b: FieldElem) -> FieldElem:
    s = a + b
    return s ** 3 - 8 * (s - 2) ** 2 - 8 * a * b


@dataclass
class Clause:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True


@dataclass
class ConditionReport:
    family: Family
    a: FieldElem
    clauses: list[Clause]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.clauses if c.required)

    def failed(self) -> list[str]:
        return [c.name for c in self.clauses if c.required and not c.passed]

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "a": str(self.a) if self.a is not None else None,
            "ok": self.ok,
            "clauses": [vars(c) for c in self.clauses],
        }


def in_subfield(a: FieldElem, q: int) -> bool:
    return a ** q == a


def check_conditions(family: Family, field: FieldSpec, a) -> ConditionReport:
    """Evaluate every hypothesis clause for the family; never raises on failure."""
    family = Family(family)
    if family.special:
        return ConditionReport(family, None, [])
    F = field
    a = F(a)
    cl: list[Clause] = []
    if family is Family.SP6_EVEN:
        cl.append(Clause("a != 0", a != 0))
        cl.append(Clause("F_p[a] = F_q", generates_field(a), f"deg m_a = {len(_orbit(a))}"))
    elif family is Family.DIM7_ORTH:
        bad = {F(0), F(1), F(2), F(-2)}
        cl.append(Clause("(i) a not in {0, 1, 2, -2}", a not in bad))
        sq = a != 1 and is_square(a - 1)
        cl.append(Clause("(ii) a - 1 square in F_q*", sq))
        cl.append(Clause("(iii) F_p[a] = F_q", generates_field(a)))
        cl.append(Clause("irreducible (i)", irreducibility_clause_i(a, a) != 0, required=False))
        cl.append(Clause("irreducible (ii)", irreducibility_clause_ii(a, a) != 0, required=False))
    elif family is Family.DIM7_UNIT:
        q = base_q(family, F)
        b = a ** q
        cl.append(Clause("a in F_{q^2} \\ F_q", not in_subfield(a, q)))
        e1 = a ** (2 * q) - a ** (q + 1) + a * a + 2 * b + 2 * a + 4
        cl.append(Clause("(i)", e1 != 0, f"value {e1}"))
        if F.p != 2:
            e2 = (a + b) ** 3 - 8 * (a + b - 2) ** 2 - 8 * a ** (q + 1)
            cl.append(Clause("(ii)", e2 != 0, f"value {e2}"))
        cl.append(Clause("(iii) F_{q^2} = F_p[a^7]", generates_field(a ** 7)))
    elif family is Family.SL7_VARIANT:
        b = F.zero
        cl.append(Clause("irreducible (i)", irreducibility_clause_i(a, b) != 0))
        cl.append(Clause("irreducible (ii)", irreducibility_clause_ii(a, b) != 0))
        cl.append(Clause("F_p[a] = F_q", generates_field(a)))
    return ConditionReport(family, a, cl)


def _orbit(a: FieldElem):
    from .field import conjugates

    return conjugates(a)


STRATEGIES = ("exhaustive", "primitive-first", "alpha-squared-plus-one")


def _candidates(family: Family, F: FieldSpec, strategy: str):
    if strategy == "exhaustive":
        yield from F.elements()
    elif strategy == "primitive-first":
        prim = [e for e in F.nonzero() if element_order(e) == F.q - 1]
        yield from prim
        yield from (e for e in F.elements() if e not in set(prim))
    elif strategy == "alpha-squared-plus-one":
        seen = set()
        for alpha in F.nonzero():
            if element_order(alpha) == F.q - 1:
                a = alpha * alpha + 1
                if a not in seen:
                    seen.add(a)
                    yield a
    else:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def search_parameter(family: Family, field: FieldSpec, strategy: str = "exhaustive") -> FieldElem | None:
    """First parameter (in the strategy's fixed order) passing check_conditions, or None."""
    family = Family(family)
    if family.special:
        raise ValueError(f"{family.value} has no free parameter")
    for a in _candidates(family, field, strategy):
        if check_conditions(family, field, a).ok:
            return a
    return None


# -- reducibility witnesses -------------------------------------------------------------


@dataclass
class Witness:
    clause: str
    vectors: list[np.ndarray]     # the spanning list used by the construction
    dimension: int                # dimension of their span
    expected_dimension: int
    invariant: bool               # span closed under x and y
    field: FieldSpec
    eigen: dict = dc_field(default_factory=dict)

    @property
    def ok(self) -> bool:
        """A proper nonzero invariant subspace, which is all reducibility needs."""
        return self.invariant and 0 < self.dimension < 7

    @property
    def full_rank(self) -> bool:
        """The listed vectors are independent (span has the expected dimension).

        Fails at a = b = 1 in characteristic 2, where the six vectors span a plane.
        """
        return self.dimension == self.expected_dimension

    def to_json(self) -> dict:
        f = self.field.format
        return {
            "clause": self.clause,
            "field": self.field.to_string(),
            "dimension": self.dimension,
            "expected_dimension": self.expected_dimension,
            "invariant": self.invariant,
            "full_rank": self.full_rank,
            "vectors": [[f(int(v)) for v in vec] for vec in self.vectors],
            **{k: str(v) for k, v in self.eigen.items()},
        }


@dataclass
class WitnessReport:
    a: FieldElem
    b: FieldElem
    witnesses: list[Witness]

    @property
    def ok(self) -> bool:
        return bool(self.witnesses) and all(w.ok for w in self.witnesses)


def _is_invariant(F: FieldSpec, mats: list[Matrix], vectors: list[np.ndarray]) -> tuple[int, bool]:
    basis = span_basis(F, vectors)
    dim = len(basis)
    if dim == 0:
        return 0, False
    images = [m.apply(v) for m in mats for v in basis]
    return dim, len(span_basis(F, basis + images)) == dim


def reducibility_witness(field: FieldSpec, a, b) -> WitnessReport:
    """Build the explicit invariant subspaces for a dim-7 pair violating irreducibility clause (i) or (ii)."""
    F = field
    a, b = F(a), F(b)
    viol_i = irreducibility_clause_i(a, b) == 0
    viol_ii = irreducibility_clause_ii(a, b) == 0
    if not (viol_i or viol_ii):
        raise ValueError("parameters satisfy both irreducibility clauses; nothing to witness")
    witnesses = []
    if viol_i:
        big, emb = extension_with_omega(F)
        A, B = emb(a), emb(b)
        om = omega(big)
        j = next(j for j in (1, 2) if B == -(om ** j) * A + 2 * om ** (2 * j))
        wj, w2j = om ** j, om ** (2 * j)
        x, y = dim7_matrices(big, A, B)
        w = vector(big, [A + w2j, -w2j, 1, -1, wj, w2j, -1])
        dim, inv = _is_invariant(big, [x, y], [w])
        eig_ok = (np.array_equal(y.apply(w), Matrix.scalar(big, 7, wj).apply(w))
                  and np.array_equal(x.apply(w), (-Matrix.identity(big, 7)).apply(w)))
        witnesses.append(Witness("(i)", [w], dim, 1, inv and eig_ok, big,
                                 {"j": j, "omega": om}))
    if viol_ii:
        x, y = dim7_matrices(F, a, b)
        xy = x @ y
        if F.p == 2:
            w = vector(F, [1, 1, 1, 1, 1, 1, 0])
            vecs = [w, y.apply(w), xy.apply(w), (y @ xy).apply(w),
                    (xy @ xy).apply(w), (y @ xy @ xy).apply(w)]
            label, expect = "(ii) p = 2", 6
        elif a == 2 and b == 2:
            w = vector(F, [1, 1, 2, 2, 1, 1, 0])
            vecs = [w, y.apply(w), xy.apply(w), (y @ xy).apply(w)]
            label, expect = "(ii) a = b = 2", 4
        else:
            s = a + b
            x1 = -(s * s - 6 * a - 10 * b + 16) / 2
            x2 = 2 * b - 4
            x3 = s - 4
            w = vector(F, [x1, x1, x2, x2, x3, x3, 0])
            vecs = [w, y.apply(w)]
            label, expect = "(ii) general", 2
        dim, inv = _is_invariant(F, [x, y], vecs)
        witnesses.append(Witness(label, vecs, dim, expect, inv, F))
    return WitnessReport(a, b, witnesses)


def apply_frobenius(e: FieldElem, k: int) -> FieldElem:
    return frobenius(e, k)
