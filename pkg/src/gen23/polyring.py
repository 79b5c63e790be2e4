"""Univariate polynomials over a FieldSpec.

Coefficients are kept as integer element codes in ascending order with no
trailing zeros; the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from .field import FieldElem, FieldError, FieldSpec, format_poly_coeffs


class Poly:
    __slots__ = ("spec", "c")

    def __init__(self, spec: FieldSpec, coeffs=()):
        self.spec = spec
        out = []
        for v in coeffs:
            if isinstance(v, FieldElem):
                if v.spec is not spec:
                    raise FieldError("coefficient from a different field")
                out.append(v.v)
            else:
                out.append(int(v))
        while out and out[-1] == 0:
            out.pop()
        self.c = tuple(out)

    @classmethod
    def from_ints(cls, spec: FieldSpec, ints) -> "Poly":
        """Coefficients given as (possibly negative) integers mapped through Z -> GF(p)."""
        return cls(spec, [spec.from_int(k) for k in ints])

    @classmethod
    def t(cls, spec: FieldSpec) -> "Poly":
        return cls(spec, [0, 1])

    @classmethod
    def const(cls, spec: FieldSpec, value) -> "Poly":
        return cls(spec, [spec(value).v])

    # -- basic properties ------------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.c) - 1

    @property
    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    @property
    def coeffs(self) -> list[FieldElem]:
        return [FieldElem(self.spec, v) for v in self.c]

    def coeff(self, i: int) -> FieldElem:
        return FieldElem(self.spec, self.c[i] if i < len(self.c) else 0)

    def is_zero(self) -> bool:
        return not self.c

    def is_monic(self) -> bool:
        return self.lc == 1

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec is other.spec and self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash((id(self.spec), self.c))

    def __repr__(self):
        if self.spec.n == 1:
            return format_poly_coeffs(list(self.c))
        return format_poly_coeffs([f"({FieldElem(self.spec, v)!r})" if v > 1 else v for v in self.c])

    def to_list(self) -> list[str]:
        return [self.spec.format(v) for v in self.c]

    # -- ring operations ------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, (int, FieldElem)):
            other = Poly(self.spec, [self.spec(other).v])
        if not isinstance(other, Poly):
            return NotImplemented
        if other.spec is not self.spec:
            raise FieldError("polynomials over different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.spec
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F._add[out[i]][v]
        return Poly(F, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.spec
        return Poly(F, [F._neg[v] for v in self.c])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        F = self.spec
        if not self.c or not other.c:
            return Poly(F)
        out = [0] * (len(self.c) + len(other.c) - 1)
        mul, add = F._mul, F._add
        for i, u in enumerate(self.c):
            if u:
                row = mul[u]
                for j, v in enumerate(other.c):
                    out[i + j] = add[out[i + j]][row[v]]
        return Poly(F, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly(self.spec, [1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, e) -> "Poly":
        return self.scale_code(self.spec(e).v)

    def scale_code(self, s: int) -> "Poly":
        F = self.spec
        return Poly(F, [F._mul[s][v] for v in self.c])

    def monic(self) -> "Poly":
        if not self.c:
            return self
        return self.scale_code(self.spec.inv(self.lc))

    def __divmod__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.spec
        r = list(self.c)
        dg = other.deg
        inv_lc = F.inv(other.lc)
        qt = [0] * max(len(r) - dg, 0)
        mul, sub = F._mul, F._sub
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c:
                f = mul[c][inv_lc]
                qt[k - dg] = f
                row = mul[f]
                for j, v in enumerate(other.c):
                    r[k - dg + j] = sub[r[k - dg + j]][row[v]]
        return Poly(F, qt), Poly(F, r[:dg] if dg > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        F = self.spec
        return Poly(F, [F._mul[F.from_int(i)][v] for i, v in enumerate(self.c)][1:])

    def __call__(self, e):
        return evaluate(self, e)


def poly_arith(f: Poly, g: Poly, op: str):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return gcd(f, g)
    raise ValueError(f"unknown op {op!r}")


def gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while g:
        f, g = g, f % g
    return f.monic()


def lcm(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return Poly(f.spec)
    return (f * g // gcd(f, g)).monic()


def evaluate(f: Poly, e) -> FieldElem:
    F = f.spec
    x = F(e).v
    acc = 0
    mul, add = F._mul, F._add
    for c in reversed(f.c):
        acc = add[mul[acc][x]][c]
    return FieldElem(F, acc)


def substitute_matrix(f: Poly, A):
    """f(A) by Horner's rule, scalars embedded as multiples of I."""
    from .matrix import Matrix

    if A.spec is not f.spec:
        raise FieldError("matrix and polynomial over different fields")
    n = A.n
    acc = Matrix.zeros(A.spec, n)
    ident = Matrix.identity(A.spec, n)
    for c in reversed(f.c):
        acc = acc @ A + ident.scale_code(c)
    return acc


def resultant(f: Poly, g: Poly) -> FieldElem:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over the roots alpha of f.

    Euclidean remainder sequence with leading-coefficient bookkeeping.
    """
    F = f.spec
    if f.spec is not g.spec:
        raise FieldError("polynomials over different fields")
    if not f or not g:
        return F.zero
    res = 1
    while True:
        m, n = f.deg, g.deg
        if n == 0:
            return FieldElem(F, F.mul(res, F.power(g.lc, m)))
        if m == 0:
            return FieldElem(F, F.mul(res, F.power(f.lc, n)))
        if m < n:
            if (m * n) % 2:
                res = F.neg(res)
            f, g = g, f
            continue
        r = f % g
        if not r:
            return F.zero
        # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
        if (m * n) % 2:
            res = F.neg(res)
        res = F.mul(res, F.power(g.lc, m - r.deg))
        f, g = g, r


def discriminant(f: Poly) -> FieldElem:
    """(-1)^{d(d-1)/2} Res(f, f') / lc(f), with f' taken at formal degree d - 1.

    Equals lc^{2d-2} prod_{i<j} (alpha_i - alpha_j)^2 in every characteristic.
    """
    F = f.spec
    d = f.deg
    if d < 1:
        raise ValueError("discriminant of a constant polynomial")
    df = f.derivative()
    if not df:
        return F.zero
    r = resultant(f, df)
    # correct for the derivative's degree drop in characteristic p
    r = r * FieldElem(F, F.power(f.lc, (d - 1) - df.deg))
    r = r / FieldElem(F, f.lc)
    if (d * (d - 1) // 2) % 2:
        r = -r
    return r


def is_irreducible(f: Poly) -> bool:
    """Rabin-style test over a field: gcd(f, t^(q^i) - t) = 1 for i <= deg/2."""
    F = f.spec
    d = f.deg
    if d < 1:
        return False
    if d == 1:
        return True
    t = Poly.t(F)
    h = t
    for _ in range(1, d // 2 + 1):
        h = _powmod(h, F.q, f)
        if gcd(h - t, f).deg > 0:
            return False
    return True


def _powmod(base: Poly, k: int, mod: Poly) -> Poly:
    result = Poly(base.spec, [1])
    base = base % mod
    while k:
        if k & 1:
            result = result * base % mod
        base = base * base % mod
        k >>= 1
    return result
