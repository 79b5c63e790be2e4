"""Dense exact linear algebra over GF(q).

Matrices hold integer element codes in an ``int64`` numpy array and do all
arithmetic through the field's lookup tables.  Vectors are column vectors
and matrices act by left multiplication.
"""

from __future__ import annotations

import math

import numpy as np

from .field import FieldElem, FieldError, FieldSpec
from .polyring import Poly, lcm


class InconsistentSystem(ValueError):
    pass


class SingularMatrix(ZeroDivisionError):
    pass


def _codes(spec: FieldSpec, rows) -> np.ndarray:
    def conv(v):
        if isinstance(v, FieldElem):
            if v.spec is not spec:
                raise FieldError("entry from a different field")
            return v.v
        return spec.from_int(int(v))

    return np.array([[conv(v) for v in row] for row in rows], dtype=np.int64)


class Matrix:
    __slots__ = ("spec", "a")

    def __init__(self, spec: FieldSpec, a: np.ndarray):
        self.spec = spec
        self.a = a

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rows(cls, spec: FieldSpec, rows) -> "Matrix":
        """Entries may be FieldElems or integers (mapped through Z -> GF(p))."""
        a = _codes(spec, rows)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got shape {a.shape}")
        return cls(spec, a)

    @classmethod
    def from_codes(cls, spec: FieldSpec, codes) -> "Matrix":
        return cls(spec, np.array(codes, dtype=np.int64))

    @classmethod
    def identity(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(spec, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, spec: FieldSpec, n: int) -> "Matrix":
        return cls(spec, np.zeros((n, n), dtype=np.int64))

    @classmethod
    def scalar(cls, spec: FieldSpec, n: int, e) -> "Matrix":
        return cls(spec, np.eye(n, dtype=np.int64) * spec(e).v)

    # -- basic protocol -------------------------------------------------------
    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __getitem__(self, ij) -> FieldElem:
        i, j = ij
        return FieldElem(self.spec, int(self.a[i, j]))

    def _same(self, other: "Matrix"):
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if other.spec is not self.spec:
            raise FieldError("matrices over different fields")
        if other.a.shape[0] != self.a.shape[1]:
            raise ValueError(f"dimension mismatch {self.a.shape} vs {other.a.shape}")

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.spec is other.spec and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((id(self.spec), self.a.shape, self.a.tobytes()))

    def key(self) -> bytes:
        return self.a.astype(np.uint16).tobytes()

    def __repr__(self):
        w = max(len(repr(self[i, j])) for i in range(self.n) for j in range(self.n))
        lines = [" ".join(repr(self[i, j]).rjust(w) for j in range(self.n)) for i in range(self.n)]
        return "\n".join(lines)

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def to_json(self) -> list[list[str]]:
        f = self.spec.format
        return [[f(int(v)) for v in row] for row in self.a]

    @classmethod
    def from_json(cls, spec: FieldSpec, rows) -> "Matrix":
        return cls(spec, np.array([[spec.parse(s).v for s in row] for row in rows], dtype=np.int64))

    # -- arithmetic -----------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix(self.spec, _matmul(self.spec, self.a, other.a))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix(self.spec, self.spec.add_t[self.a, other.a])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix(self.spec, self.spec.sub_t[self.a, other.a])

    def __neg__(self) -> "Matrix":
        return Matrix(self.spec, self.spec.neg_t[self.a])

    def scale(self, e) -> "Matrix":
        return self.scale_code(self.spec(e).v)

    def scale_code(self, s: int) -> "Matrix":
        return Matrix(self.spec, self.spec.mul_t[s, self.a])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.spec, self.a.T.copy())

    def frobenius(self, k: int = 1) -> "Matrix":
        """Entrywise e -> e^(p^k)."""
        F = self.spec
        table = np.array([F.power(v, F.p ** (k % F.n)) for v in range(F.q)], dtype=np.int64)
        return Matrix(F, table[self.a])

    def inv(self) -> "Matrix":
        n = self.n
        aug = np.concatenate([self.a, np.eye(n, dtype=np.int64)], axis=1)
        red, piv = row_reduce(self.spec, aug)
        if piv[:n] != list(range(n)):
            raise SingularMatrix("matrix is singular")
        return Matrix(self.spec, red[:n, n:].copy())

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inv() ** (-k)
        result = Matrix.identity(self.spec, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def apply(self, v) -> np.ndarray:
        """Matrix times column vector (given as codes or FieldElems)."""
        v = _vec(self.spec, v)
        return _matmul(self.spec, self.a, v[:, None])[:, 0]

    def det(self) -> FieldElem:
        F = self.spec
        A = self.a.tolist()
        n = len(A)
        d = 1
        for c in range(n):
            piv = next((r for r in range(c, n) if A[r][c]), None)
            if piv is None:
                return F.zero
            if piv != c:
                A[c], A[piv] = A[piv], A[c]
                d = F.neg(d)
            d = F.mul(d, A[c][c])
            inv = F.inv(A[c][c])
            for r in range(c + 1, n):
                if A[r][c]:
                    f = F.mul(A[r][c], inv)
                    row_c, row_r = A[c], A[r]
                    for k in range(c, n):
                        row_r[k] = F.sub(row_r[k], F.mul(f, row_c[k]))
        return FieldElem(F, d)

    def rank(self) -> int:
        return len(row_reduce(self.spec, self.a)[1])

    def trace(self) -> FieldElem:
        F = self.spec
        t = 0
        for i in range(self.n):
            t = F.add(t, int(self.a[i, i]))
        return FieldElem(F, t)

    # -- predicates -------------------------------------------------------------
    def is_identity(self) -> bool:
        return np.array_equal(self.a, np.eye(self.n, dtype=np.int64))

    def is_diagonal(self) -> bool:
        return not np.any(self.a[~np.eye(self.n, dtype=bool)])

    def is_scalar(self) -> bool:
        return self.is_diagonal() and bool(np.all(self.a.diagonal() == self.a[0, 0]))

    def is_zero(self) -> bool:
        return not np.any(self.a)

    def embed(self, emb) -> "Matrix":
        """Image under a field Embedding."""
        return Matrix(emb.big, emb.table[self.a])


def _vec(spec: FieldSpec, v) -> np.ndarray:
    if isinstance(v, np.ndarray):
        return v.astype(np.int64)
    out = []
    for e in v:
        if isinstance(e, FieldElem):
            out.append(e.v)
        else:
            out.append(spec.from_int(int(e)))
    return np.array(out, dtype=np.int64)


def vector(spec: FieldSpec, entries) -> np.ndarray:
    """Column vector from FieldElems or integers mapped through Z -> GF(p)."""
    return _vec(spec, entries)


def _matmul(spec: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    mul, add = spec.mul_t, spec.add_t
    acc = mul[A[:, 0][:, None], B[0][None, :]]
    for j in range(1, A.shape[1]):
        acc = add[acc, mul[A[:, j][:, None], B[j][None, :]]]
    return acc


def mat_arith(A: Matrix, B: Matrix | None, op: str, k: int = 1) -> Matrix:
    if op == "mul":
        return A @ B
    if op == "add":
        return A + B
    if op == "inverse":
        return A.inv()
    if op == "transpose":
        return A.T
    if op == "frobenius_entrywise":
        return A.frobenius(k)
    raise ValueError(f"unknown op {op!r}")


# -- Gaussian elimination -----------------------------------------------------------


def row_reduce(spec: FieldSpec, arr) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    A = np.array(arr, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("row_reduce expects a 2-d array")
    m, k = A.shape
    mul, sub, inv = spec.mul_t, spec.sub_t, spec.inv_t
    pivots = []
    r = 0
    for c in range(k):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        f = A[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            A[rows] = sub[A[rows], mul[f[rows][:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def kernel_basis(A) -> list[np.ndarray]:
    """Basis of {v : A v = 0}; A may be a Matrix or (spec, array) via Matrix."""
    spec, arr = A.spec, A.a
    return _nullspace(spec, arr)


def _nullspace(spec: FieldSpec, arr: np.ndarray) -> list[np.ndarray]:
    red, piv = row_reduce(spec, arr)
    k = arr.shape[1]
    free = [c for c in range(k) if c not in set(piv)]
    basis = []
    for f in free:
        v = np.zeros(k, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = spec.neg_t[red[i, f]]
        basis.append(v)
    return basis


def image_basis(A: Matrix) -> list[np.ndarray]:
    """Canonical (reduced echelon) basis of the column space of A."""
    red, _ = row_reduce(A.spec, A.a.T)
    return [row.copy() for row in red]


def span_basis(spec: FieldSpec, vectors) -> list[np.ndarray]:
    if not len(vectors):
        return []
    red, _ = row_reduce(spec, np.array([_vec(spec, v) for v in vectors]))
    return [row.copy() for row in red]


def solve(A: Matrix, b) -> np.ndarray:
    """Some solution of A v = b; raises InconsistentSystem if there is none."""
    spec = A.spec
    b = _vec(spec, b)
    aug = np.concatenate([A.a, b[:, None]], axis=1)
    red, piv = row_reduce(spec, aug)
    k = A.a.shape[1]
    if piv and piv[-1] == k:
        raise InconsistentSystem("linear system has no solution")
    v = np.zeros(k, dtype=np.int64)
    for i, c in enumerate(piv):
        v[c] = red[i, k]
    return v


def solve_linear(spec: FieldSpec, lhs: np.ndarray, rhs: np.ndarray | None = None):
    """Affine solution set of lhs v = rhs as (particular, kernel basis).

    Returns (None, kernel) when the system is inconsistent.
    """
    if rhs is None:
        rhs = np.zeros(lhs.shape[0], dtype=np.int64)
    aug = np.concatenate([lhs, rhs[:, None]], axis=1)
    red, piv = row_reduce(spec, aug)
    k = lhs.shape[1]
    kernel = _nullspace(spec, lhs)
    if piv and piv[-1] == k:
        return None, kernel
    v = np.zeros(k, dtype=np.int64)
    for i, c in enumerate(piv):
        v[c] = red[i, k]
    return v, kernel


# -- polynomials attached to a matrix ---------------------------------------------


def char_poly(A: Matrix) -> Poly:
    """det(tI - A) via reduction to upper Hessenberg form.

    Only field operations are used, so this is valid in every characteristic.
    """
    F = A.spec
    n = A.n
    H = A.a.tolist()
    add, sub, mul = F._add, F._sub, F._mul
    for m in range(1, n - 1):
        i = next((r for r in range(m, n) if H[r][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = F.inv(H[m][m - 1])
        for r in range(m + 1, n):
            u = mul[H[r][m - 1]][inv]
            if u:
                row_r, row_m = H[r], H[m]
                for k in range(n):
                    row_r[k] = sub[row_r[k]][mul[u][row_m[k]]]
                for row in H:
                    row[m] = add[row[m]][mul[u][row[r]]]
    t = Poly.t(F)
    ps = [Poly(F, [1])]
    for m in range(1, n + 1):
        pm = (t - Poly(F, [H[m - 1][m - 1]])) * ps[m - 1]
        prod = 1
        for i in range(1, m):
            prod = mul[prod][H[m - i][m - i - 1]]
            c = mul[prod][H[m - i - 1][m - 1]]
            if c:
                pm = pm - ps[m - i - 1].scale_code(c)
        ps.append(pm)
    return ps[n]


def _vector_annihilator(A: Matrix, v: np.ndarray) -> Poly:
    F = A.spec
    krylov = [v]
    while True:
        krylov.append(_matmul(F, A.a, krylov[-1][:, None])[:, 0])
        K = np.array(krylov).T  # columns v, Av, ..., A^k v
        null = _nullspace(F, K)
        if null:
            return Poly(F, list(null[0])).monic()


def min_poly(A: Matrix) -> Poly:
    """Least common multiple of the minimal annihilators of the standard basis vectors."""
    F = A.spec
    result = Poly(F, [1])
    for i in range(A.n):
        e = np.zeros(A.n, dtype=np.int64)
        e[i] = 1
        result = lcm(result, _vector_annihilator(A, e))
    return result


def invariant_factors(A: Matrix) -> list[Poly]:
    """Nonconstant invariant factors of tI - A, each dividing the next."""
    F = A.spec
    n = A.n
    t = Poly.t(F)
    M = [[(t if i == j else Poly(F)) - Poly(F, [int(A.a[i, j])]) for j in range(n)] for i in range(n)]
    diag = smith_diagonal(M)
    return [d for d in diag if d.deg > 0]


def smith_diagonal(M: list[list[Poly]]) -> list[Poly]:
    """Diagonal of the Smith normal form of a square polynomial matrix (monic entries)."""
    M = [row[:] for row in M]
    n = len(M)
    F = M[0][0].spec
    zero = Poly(F)
    for k in range(n):
        while True:
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if M[i][j] and (best is None or M[i][j].deg < best[0]):
                        best = (M[i][j].deg, i, j)
            if best is None:
                return [M[i][i].monic() for i in range(k)] + [zero] * (n - k)
            _, i, j = best
            M[k], M[i] = M[i], M[k]
            for row in M:
                row[k], row[j] = row[j], row[k]
            piv = M[k][k]
            dirty = False
            for i in range(k + 1, n):
                if M[i][k]:
                    qt, r = divmod(M[i][k], piv)
                    M[i] = [M[i][c] - qt * M[k][c] for c in range(n)]
                    dirty = dirty or bool(r)
            for j in range(k + 1, n):
                if M[k][j]:
                    qt, r = divmod(M[k][j], piv)
                    for row in M:
                        row[j] = row[j] - qt * row[k]
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next(((i, j) for i in range(k + 1, n) for j in range(k + 1, n)
                        if M[i][j] and (M[i][j] % piv)), None)
            if bad is None:
                break
            M[k] = [M[k][c] + M[bad[0]][c] for c in range(n)]
    return [M[i][i].monic() for i in range(n)]


# -- algebra spanned by a set of matrices -------------------------------------------


def spanning_dimension(gens: list[Matrix]) -> int:
    """Dimension of the associative algebra generated by gens and I.

    Closes the span of I under left multiplication by the generators; the
    pair is absolutely irreducible iff the result is n^2 (Burnside).
    """
    if not gens:
        raise ValueError("need at least one generator")
    F = gens[0].spec
    n = gens[0].n
    for g in gens:
        if g.spec is not F or g.n != n:
            raise FieldError("generators must share field and dimension")
    mul, sub = F.mul_t, F.sub_t
    basis = np.zeros((0, n * n), dtype=np.int64)
    pivots: list[int] = []
    layer = np.eye(n, dtype=np.int64).reshape(1, n * n)
    while len(layer):
        # reduce the layer against the current echelon basis
        cand = layer
        for row, c in zip(basis, pivots):
            f = cand[:, c]
            hit = np.flatnonzero(f)
            if hit.size:
                cand[hit] = sub[cand[hit], mul[f[hit][:, None], row[None, :]]]
        cand = cand[np.any(cand, axis=1)]
        if not len(cand):
            break
        new, _ = row_reduce(F, cand)
        basis, pivots = row_reduce(F, np.concatenate([basis, new]))
        if len(pivots) == n * n:
            break
        mats = new.reshape(-1, n, n)
        prods = [_matmul(F, g.a, m) for g in gens for m in mats]
        layer = np.array(prods).reshape(-1, n * n)
    return len(pivots)


# -- orders -------------------------------------------------------------------------


def element_order(A: Matrix, cap: int = 10**5) -> int | None:
    """Least k <= cap with A^k = I, or None when the order exceeds cap.

    Baby-step giant-step over hashed powers, O(sqrt(cap)) products.
    """
    if A.det() == 0:
        raise SingularMatrix("order of a singular matrix")
    m = max(1, math.isqrt(cap) + 1)
    baby = {}
    P = Matrix.identity(A.spec, A.n)
    for j in range(m):
        if j > 0 and P.is_identity():
            return j
        baby.setdefault(P.key(), j)
        P = P @ A
    giant = P  # A^m
    G = giant
    for i in range(1, m + 1):
        j = baby.get(G.key())
        if j is not None:
            k = i * m - j
            return k if k <= cap else None
        G = G @ giant
    return None


def projective_order(A: Matrix, cap: int = 10**5) -> int | None:
    """Least k <= cap with A^k scalar, or None."""
    order = element_order(A, cap)
    if order is not None:
        for k in range(1, order + 1):
            if order % k == 0 and (A ** k).is_scalar():
                return k
    # the order exceeds cap, but a scalar power might still come earlier
    P = A
    for k in range(1, cap + 1):
        if P.is_scalar():
            return k
        P = P @ A
    return None


def commutator(x: Matrix, y: Matrix) -> Matrix:
    """[x, y] = x^-1 y^-1 x y."""
    return x.inv() @ y.inv() @ x @ y
