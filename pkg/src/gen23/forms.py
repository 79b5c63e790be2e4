"""Invariant bilinear, sesquilinear and quadratic forms; Wall forms and spinor norms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import FieldElem, FieldSpec, is_square
from .generators import Family, GeneratorPair, sp6_gram
from .matrix import Matrix, _nullspace, image_basis, solve, solve_linear


class FormError(ValueError):
    pass


SIGMAS = ("identity", "q-power")


def _kron(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n, m = A.shape[0], B.shape[0]
    return F.mul_t[A[:, None, :, None], B[None, :, None, :]].reshape(n * m, n * m)


def _sigma_power(F: FieldSpec, sigma: str) -> int:
    """Exponent k with sigma = p^k-power map (0 for the identity)."""
    if sigma == "identity":
        return 0
    if sigma == "q-power":
        if F.n % 2:
            raise FormError(f"q-power map needs a field of square order, got {F!r}")
        return F.n // 2
    raise ValueError(f"unknown sigma {sigma!r}; choose from {SIGMAS}")


def _twist(M: Matrix, k: int) -> Matrix:
    return M.frobenius(k) if k else M


@dataclass
class FormSolution:
    basis: list[Matrix]
    kinds: list[str]
    nondegenerate: list[bool]
    sigma: str

    @property
    def dimension(self) -> int:
        return len(self.basis)


def classify_form(M: Matrix, sigma: str = "identity") -> str:
    """One of symmetric, alternating, hermitian or none."""
    k = _sigma_power(M.spec, sigma)
    if k:
        return "hermitian" if _twist(M.T, k) == M else "none"
    if M.T == -M and not np.any(M.a.diagonal()):
        return "alternating"
    if M.T == M:
        return "symmetric"
    return "none"


def _normalize_hermitian(M: Matrix, k: int) -> Matrix:
    # a 1-dim solution space is closed under M -> (M^T)^sigma, so some multiple is hermitian
    for lam in M.spec.nonzero():
        N = M.scale(lam)
        if _twist(N.T, k) == N:
            return N
    return M


def invariant_forms(gens, sigma: str = "identity") -> FormSolution:
    """Basis of {M : g^T M g^sigma = M for every generator g}.

    ``gens`` is a GeneratorPair or a list of matrices over one field.
    """
    if isinstance(gens, GeneratorPair):
        gens = [gens.x, gens.y]
    F = gens[0].spec
    n = gens[0].n
    k = _sigma_power(F, sigma)
    eye = np.eye(n * n, dtype=np.int64)
    rows = []
    for g in gens:
        h = _twist(g, k)
        rows.append(F.sub_t[_kron(F, g.a.T, h.a.T), eye])
    null = _nullspace(F, np.concatenate(rows))
    basis = [Matrix(F, v.reshape(n, n)) for v in null]
    if k and len(basis) == 1:
        basis = [_normalize_hermitian(basis[0], k)]
    kinds = [classify_form(M, sigma) for M in basis]
    nondeg = [M.det() != 0 for M in basis]
    return FormSolution(basis, kinds, nondeg, sigma)


def preserves_form(g: Matrix, M: Matrix, sigma: str = "identity") -> bool:
    k = _sigma_power(g.spec, sigma)
    return g.T @ M @ _twist(g, k) == M


def orthogonal_gram_dim7(F: FieldSpec, a) -> Matrix:
    """Closed form of the symmetric form fixed by the orthogonal dim-7 pair (b = a).

    Normalized so that the (1,2) entry is -1; valid for every a.
    """
    a = F(a)
    u = 2 * a - 1
    v = 3 - 2 * a
    c = 2 * a * a - 2 * a - 1
    return Matrix.from_rows(F, [
        [3, -1, -1, -1, -1, u, u],
        [-1, 3, -1, -1, u, -1, v],
        [-1, -1, 3, v, -1, -1, -1],
        [-1, -1, v, 3, -1, -1, v],
        [-1, u, -1, -1, 3, -1, -1],
        [u, -1, -1, -1, -1, 3, c],
        [u, v, -1, v, -1, c, 3],
    ])


def gram_matrix(pair: GeneratorPair) -> Matrix | None:
    """The natural invariant form of a pair (None when it fixes no form)."""
    F = pair.field
    if pair.family is Family.SP6_EVEN:
        return sp6_gram(F, pair.a)
    if pair.family is Family.DIM7_ORTH:
        return orthogonal_gram_dim7(F, pair.a)
    sigma = "q-power" if pair.family.unitary else "identity"
    sol = invariant_forms(pair, sigma)
    if sol.dimension != 1:
        return None
    M = sol.basis[0]
    if pair.family is Family.SU7_4_SPECIAL and M.is_scalar():
        M = Matrix.identity(F, M.n)
    return M


# -- quadratic forms in characteristic 2 ----------------------------------------------


@dataclass
class QuadraticSolution:
    dimension: int | None      # affine dimension of the solution set, None when empty
    count: int                 # number of invariant quadratic forms
    witness: Matrix | None     # upper-triangular B of one solution


def _upper_index(n: int) -> dict[tuple[int, int], int]:
    return {(i, j): k for k, (i, j) in enumerate((i, j) for i in range(n) for j in range(i, n))}


def invariant_quadratic_char2(gens, polarization: Matrix | None = None) -> QuadraticSolution:
    """Quadratic forms Q(v) = v^T B v (B upper triangular) fixed by every generator.

    Invariance Q(gv) = Q(v) is the linear condition U(g^T B g) = B, where U folds a
    matrix onto its upper triangle.  If a polarization J is given, the off-diagonal
    entries of B must also equal those of J.
    """
    if isinstance(gens, GeneratorPair):
        if gens.family.dim != 6:
            raise FormError("quadratic-form test applies to the 6-dimensional families")
        if polarization is None and gens.family is Family.SP6_EVEN:
            polarization = sp6_gram(gens.field, gens.a)
        gens = [gens.x, gens.y]
    F = gens[0].spec
    if F.p != 2:
        raise FormError("invariant_quadratic_char2 needs characteristic 2")
    n = gens[0].n
    idx = _upper_index(n)
    m = len(idx)
    rows, rhs = [], []
    for g in gens:
        G = g.a
        # coefficient of B_kl (k <= l) in (g^T B g)_ij is g_ki g_lj
        for (i, j), r in idx.items():
            row = np.zeros(m, dtype=np.int64)
            for (k, l), c in idx.items():
                coef = F.mul(int(G[k, i]), int(G[l, j]))
                if i != j:
                    coef = F.add(coef, F.mul(int(G[k, j]), int(G[l, i])))
                row[c] = coef
            row[r] = F.sub(int(row[r]), 1)
            rows.append(row)
            rhs.append(0)
    if polarization is not None:
        for (i, j), c in idx.items():
            if i < j:
                row = np.zeros(m, dtype=np.int64)
                row[c] = 1
                rows.append(row)
                rhs.append(int(polarization.a[i, j]))
    lhs = np.array(rows, dtype=np.int64)
    part, kernel = solve_linear(F, lhs, np.array(rhs, dtype=np.int64))
    if part is None:
        return QuadraticSolution(None, 0, None)
    B = np.zeros((n, n), dtype=np.int64)
    for (i, j), c in idx.items():
        B[i, j] = part[c]
    return QuadraticSolution(len(kernel), F.q ** len(kernel), Matrix(F, B))


# -- Wall form and spinor norm ----------------------------------------------------------


@dataclass
class WallForm:
    basis: list[np.ndarray]
    gram: Matrix | None
    det: FieldElem


def dim7_wall_basis(F: FieldSpec, a) -> list[np.ndarray]:
    """The explicit basis {e1-e2, e3-e4, e5-e6, -a(e1+e2)+e5+e6+2e7} of Im(x - I)."""
    a = F(a)
    rows = [[1, -1, 0, 0, 0, 0, 0], [0, 0, 1, -1, 0, 0, 0], [0, 0, 0, 0, 1, -1, 0],
            [-a, -a, 0, 0, 1, 1, 2]]
    return [np.array([F(e).v for e in r], dtype=np.int64) for r in rows]


def wall_form(x: Matrix, bilinear: Matrix, basis: list[np.ndarray] | None = None,
              require_nondegenerate: bool = True) -> WallForm:
    """Wall form w(u, v) = B(u', v) on V_x = Im(x - I), where u = (x - I) u'.

    ``basis`` defaults to the reduced echelon basis of V_x.
    """
    F = x.spec
    if require_nondegenerate and bilinear.det() == 0:
        raise FormError("bilinear form is degenerate")
    if F.p == 2:
        raise FormError("Wall form criterion is for odd characteristic")
    xm = x - Matrix.identity(F, x.n)
    if basis is None:
        basis = image_basis(xm)
    if not basis:
        return WallForm([], None, F.one)
    pre = [solve(xm, u) for u in basis]
    k = len(basis)
    Bu = [bilinear.apply(v) for v in basis]  # B v as a column
    G = np.zeros((k, k), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            acc = 0
            for s in range(x.n):
                acc = F.add(acc, F.mul(int(pre[i][s]), int(Bu[j][s])))
            G[i, j] = acc
    gram = Matrix(F, G)
    return WallForm(basis, gram, gram.det())


def dim7_wall_gram_expected(F: FieldSpec, a) -> Matrix:
    """Closed-form 4x4 Wall Gram matrix of the orthogonal dim-7 x in the basis of dim7_wall_basis."""
    a = F(a)
    return Matrix.from_rows(F, [
        [-4, 0, 2 * a, 4 - 4 * a],
        [0, -2 * a, 0, 4 - 2 * a],
        [2 * a, 0, -4, 2 * a * a - 2 * a],
        [4 - 4 * a, 4 - 2 * a, 2 * a * a - 2 * a, 4 * a - 4 - 2 * a * a],
    ])


def dim7_wall_det_expected(F: FieldSpec, a) -> FieldElem:
    a = F(a)
    return 16 * (a - 2) ** 2 * (a - 1) * (a + 2) ** 2


def spinor_norm_in_omega(x: Matrix, bilinear: Matrix) -> bool:
    """True iff the Wall-form determinant of x is a nonzero square."""
    wf = wall_form(x, bilinear)
    if wf.det == 0:
        raise FormError("Wall form is degenerate; spinor norm criterion does not apply")
    return is_square(wf.det)
