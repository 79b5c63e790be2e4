"""Exact arithmetic in GF(p^n) with an explicit defining modulus.

Elements are stored as integers ``0 <= v < q`` where ``v = sum(c_i * p**i)``
and ``c_0 + c_1 t + ... + c_{n-1} t^{n-1}`` is the residue-class
representative modulo the modulus.  The prime subfield is therefore
``{0, ..., p-1}``.  All arithmetic goes through log/antilog tables built
once per field; q is kept small (desk scale) so that is cheap.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 2048


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, n) with q = p**n, or raise FieldError."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = prime_factors(q)[0]
    n, r = 0, q
    while r % p == 0:
        r //= p
        n += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, n


def _polymulmod(f: list[int], g: list[int], mod: list[int], p: int) -> list[int]:
    # dense product of residues, reduced by the monic modulus
    n = len(mod) - 1
    prod = [0] * (2 * n - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                prod[i + j] = (prod[i + j] + fi * gj) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n + 1):
                prod[k - n + j] = (prod[k - n + j] - c * mod[j]) % p
    return prod[:n]


def _prime_poly_irreducible(mod: tuple[int, ...], p: int) -> bool:
    from .polyring import Poly, is_irreducible

    return is_irreducible(Poly(GF(p), list(mod)))


@lru_cache(maxsize=None)
def default_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n over GF(p).

    Candidates are ordered by the integer ``sum(c_i p^i)`` of their lower
    coefficients, i.e. lexicographically with the highest coefficient most
    significant.
    """
    if n == 1:
        return (0, 1)
    for code in range(p**n):
        low = [(code // p**i) % p for i in range(n)]
        if low[0] == 0:
            continue
        mod = tuple(low) + (1,)
        if _prime_poly_irreducible(mod, p):
            return mod
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")


class FieldSpec:
    """The field GF(p^n) realized as GF(p)[t]/(modulus).

    Immutable once built; obtain instances through :func:`GF` so equal
    specs are shared.
    """

    def __init__(self, p: int, n: int = 1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be positive")
        q = p**n
        if q > MAX_ORDER:
            raise FieldError(f"GF({q}) exceeds the supported size {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus {modulus} is not monic of degree {n}")
        if n > 1 and not _prime_poly_irreducible(modulus, p):
            raise FieldError(f"modulus {format_poly_coeffs(modulus)} is reducible over GF({p})")
        self.p, self.n, self.q = p, n, q
        self.modulus = modulus if n > 1 else (0, 1)
        self._build_tables()

    # -- construction -----------------------------------------------------
    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        digits = np.array(list(product(range(p), repeat=n)), dtype=np.int64)[:, ::-1]
        self.digits = digits  # digits[v] = coefficient vector of element v
        weights = p ** np.arange(n, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        neg = ((-digits) % p) @ weights

        # find a primitive element, build exp/log
        mod = list(self.modulus)
        exp = None
        for g in range(1, q):
            g_vec = [int(c) for c in digits[g]]
            seq = [1]
            cur = [1] + [0] * (n - 1)
            ok = True
            for _ in range(q - 2):
                cur = _polymulmod(cur, g_vec, mod, p)
                v = sum(c * p**i for i, c in enumerate(cur))
                if v == 1:
                    ok = False
                    break
                seq.append(v)
            if ok and len(set(seq)) == q - 1:
                exp = seq
                self.primitive = g
                break
        if exp is None:
            raise FieldError("no primitive element; modulus is not irreducible")
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        log[np.array(exp)] = np.arange(q - 1)
        mul = np.zeros((q, q), dtype=np.int64)
        nz = np.arange(1, q)
        mul[1:, 1:] = exp_arr[log[nz][:, None] + log[nz][None, :]]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = exp_arr[(q - 1 - log[nz]) % (q - 1)]

        self.add_t, self.mul_t, self.neg_t, self.inv_t = add, mul, neg, inv
        self.sub_t = add[:, neg]
        self.exp_t, self.log_t = exp_arr, log
        # python-list mirrors for scalar speed
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._sub = self.sub_t.tolist()
        self._neg = neg.tolist()
        self._inv = inv.tolist()
        self._exp = exp_arr.tolist()
        self._log = log.tolist()

    # -- scalar ops on integer codes ----------------------------------------
    def add(self, u: int, v: int) -> int:
        return self._add[u][v]

    def sub(self, u: int, v: int) -> int:
        return self._sub[u][v]

    def mul(self, u: int, v: int) -> int:
        return self._mul[u][v]

    def neg(self, u: int) -> int:
        return self._neg[u]

    def inv(self, u: int) -> int:
        if u == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._inv[u]

    def div(self, u: int, v: int) -> int:
        return self._mul[u][self.inv(v)]

    def power(self, u: int, k: int) -> int:
        if u == 0:
            if k < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if k == 0 else 0
        return self._exp[(self._log[u] * k) % (self.q - 1)]

    def from_int(self, k: int) -> int:
        """Image of the integer k under Z -> GF(p) -> GF(q)."""
        return int(k) % self.p

    def code(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.n:
            raise FieldError(f"{len(coeffs)} coefficients for a degree-{self.n} field")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    # -- element-level API ----------------------------------------------------
    def __call__(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.spec is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (list, tuple)):
            return FieldElem(self, self.code(value))
        return FieldElem(self, self.from_int(value))

    def elem(self, v: int) -> "FieldElem":
        """Element with integer code v (not the integer v mod p)."""
        if not 0 <= v < self.q:
            raise FieldError(f"code {v} out of range for GF({self.q})")
        return FieldElem(self, int(v))

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, 0)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, 1)

    @property
    def gen(self) -> "FieldElem":
        """The residue class of t."""
        return FieldElem(self, self.p if self.n > 1 else 0)

    def elements(self):
        """All elements in enumeration order (by code)."""
        return [FieldElem(self, v) for v in range(self.q)]

    def nonzero(self):
        return [FieldElem(self, v) for v in range(1, self.q)]

    def parse(self, text: str) -> "FieldElem":
        parts = [s.strip() for s in text.split(",") if s.strip() != ""]
        try:
            coeffs = [int(s) for s in parts]
        except ValueError as exc:
            raise FieldError(f"cannot parse field element {text!r}") from exc
        return FieldElem(self, self.code(coeffs))

    def format(self, v: int) -> str:
        return ",".join(str(int(c)) for c in self.digits[v])

    def prime_subfield(self) -> "FieldSpec":
        return GF(self.p)

    def subfield_elements(self, d: int) -> list[int]:
        """Codes of the subfield GF(p^d), d | n."""
        if self.n % d:
            raise FieldError(f"GF({self.p}^{d}) is not a subfield of {self!r}")
        qd = self.p**d
        return [v for v in range(self.q) if self.power(v, qd) == v]

    def to_string(self) -> str:
        return f"{self.p}^{self.n}/" + ",".join(str(c) for c in self.modulus)

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}, {format_poly_coeffs(self.modulus)})"

    def __reduce__(self):
        return (GF, (self.p, self.n, self.modulus))


@lru_cache(maxsize=None)
def _gf(p: int, n: int, modulus: tuple[int, ...] | None) -> FieldSpec:
    return FieldSpec(p, n, modulus)


def GF(p: int, n: int = 1, modulus=None) -> FieldSpec:
    """Cached constructor.  ``GF(9)`` is accepted as shorthand for GF(3, 2)."""
    if n == 1 and modulus is None and not is_prime(p):
        p, n = prime_power(p)
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        if n == 1 and len(modulus) == 2:
            modulus = None
        elif modulus == default_modulus(p, n):
            modulus = None
    return _gf(p, n, modulus)


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p^n/c0,c1,...,1"``, ``"p^n"`` or a plain prime power ``"q"``."""
    text = text.strip()
    try:
        if "/" in text:
            head, tail = text.split("/", 1)
            p, n = (int(s) for s in head.split("^")) if "^" in head else (int(head), 1)
            mod = [int(s) for s in tail.split(",")]
            return GF(p, n, mod)
        if "^" in text:
            p, n = (int(s) for s in text.split("^"))
            return GF(p, n)
        return GF(int(text))
    except ValueError as exc:
        if isinstance(exc, FieldError):
            raise
        raise FieldError(f"cannot parse field {text!r}") from exc


def format_poly_coeffs(coeffs, var: str = "t") -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms) if terms else "0"


class FieldElem:
    """An element of a :class:`FieldSpec`; a hashable value type."""

    __slots__ = ("spec", "v")

    def __init__(self, spec: FieldSpec, v: int):
        self.spec = spec
        self.v = v

    @property
    def coeffs(self) -> list[int]:
        return [int(c) for c in self.spec.digits[self.v]]

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec is not self.spec:
                raise FieldError(f"mixed fields {self.spec!r} and {other.spec!r}")
            return other.v
        if isinstance(other, (int, np.integer)):
            return self.spec.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec._add[self.v][o])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec._sub[self.v][o])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec._sub[o][self.v])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec._mul[self.v][o])

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec, self.spec.div(o, self.v))

    def __neg__(self):
        return FieldElem(self.spec, self.spec._neg[self.v])

    def __pow__(self, k: int):
        return FieldElem(self.spec, self.spec.power(self.v, k))

    def inverse(self):
        return FieldElem(self.spec, self.spec.inv(self.v))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec is other.spec and self.v == other.v
        if isinstance(other, (int, np.integer)):
            return self.v == self.spec.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((id(self.spec), self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        if self.v >= self.spec.p:
            raise FieldError(f"{self} is not in the prime field")
        return self.v

    def __str__(self):
        return self.spec.format(self.v)

    def __repr__(self):
        if self.spec.n == 1:
            return f"{self.v}"
        return format_poly_coeffs(self.coeffs, "t") or "0"


def arith(e1: FieldElem, e2: FieldElem, op: str) -> FieldElem:
    ops = {"add": FieldElem.__add__, "sub": FieldElem.__sub__,
           "mul": FieldElem.__mul__, "div": FieldElem.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    if e1.spec is not e2.spec:
        raise FieldError("mixed field specs")
    return ops[op](e1, e2)


def frobenius(e: FieldElem, k: int = 1) -> FieldElem:
    """e -> e^(p^k)."""
    if k < 0:
        raise ValueError("frobenius exponent must be non-negative")
    spec = e.spec
    return FieldElem(spec, spec.power(e.v, spec.p ** (k % spec.n)))


def is_square(e: FieldElem) -> bool:
    """Euler's criterion.  Every element is a square in characteristic 2."""
    if e.v == 0:
        raise ValueError("is_square is only defined on nonzero elements")
    spec = e.spec
    if spec.p == 2:
        return True
    return spec.power(e.v, (spec.q - 1) // 2) == 1


def element_order(e: FieldElem) -> int:
    if e.v == 0:
        raise ValueError("zero has no multiplicative order")
    spec = e.spec
    order = spec.q - 1
    for r in prime_factors(spec.q - 1):
        while order % r == 0 and spec.power(e.v, order // r) == 1:
            order //= r
    return order


def conjugates(e: FieldElem) -> list[FieldElem]:
    """Distinct images of e under the p-power map, starting with e."""
    out = [e]
    cur = frobenius(e, 1)
    while cur != e:
        out.append(cur)
        cur = frobenius(cur, 1)
    return out


def minimal_polynomial(e: FieldElem):
    """Monic minimal polynomial of e over the prime field, as a Poly over GF(p)."""
    from .polyring import Poly

    spec = e.spec
    coeffs = [1]  # product of (t - c) over conjugates, computed in spec
    for c in conjugates(e):
        new = [0] * (len(coeffs) + 1)
        for i, a in enumerate(coeffs):
            new[i + 1] = spec.add(new[i + 1], a)
            new[i] = spec.sub(new[i], spec.mul(a, c.v))
        coeffs = new
    if any(v >= spec.p for v in coeffs):
        raise AssertionError("minimal polynomial coefficients left the prime field")
    return Poly(GF(spec.p), coeffs)


def generates_field(e: FieldElem) -> bool:
    """True iff GF(p)[e] is the whole field."""
    return len(conjugates(e)) == e.spec.n


def omega(spec: FieldSpec) -> FieldElem | None:
    """Fixed cube root of unity: 1 when p = 3, else the least-coded element of order 3.

    Returns None when the field has no primitive cube root of unity.
    """
    if spec.p == 3:
        return spec.one
    if (spec.q - 1) % 3:
        return None
    for v in range(2, spec.q):
        if spec.power(v, 3) == 1:
            return FieldElem(spec, v)
    raise AssertionError("unreachable")


def find_root(poly, spec: FieldSpec) -> FieldElem | None:
    """Least-coded root in spec of a polynomial given by prime-field int coefficients."""
    coeffs = [spec.from_int(c) for c in poly]
    for v in range(spec.q):
        acc = 0
        for c in reversed(coeffs):
            acc = spec.add(spec.mul(acc, v), c)
        if acc == 0:
            return FieldElem(spec, v)
    return None


class Embedding:
    """Field embedding small -> big sending t to a root of small's modulus."""

    def __init__(self, small: FieldSpec, big: FieldSpec):
        if small.p != big.p or big.n % small.n:
            raise FieldError(f"{small!r} does not embed in {big!r}")
        self.small, self.big = small, big
        if small is big:
            table = list(range(small.q))
        else:
            root = find_root(small.modulus, big)
            if root is None:
                raise AssertionError("modulus has no root in the extension")
            powers = [big.power(root.v, i) for i in range(small.n)]
            table = []
            for v in range(small.q):
                acc = 0
                for c, pw in zip(small.digits[v], powers):
                    acc = big.add(acc, big.mul(big.from_int(int(c)), pw))
                table.append(acc)
        self.table = np.array(table, dtype=np.int64)

    def __call__(self, e: FieldElem) -> FieldElem:
        return FieldElem(self.big, int(self.table[e.v]))


def extension_with_omega(spec: FieldSpec) -> tuple[FieldSpec, Embedding]:
    """Smallest extension of spec containing a primitive cube root of unity."""
    if omega(spec) is not None:
        return spec, Embedding(spec, spec)
    big = GF(spec.p, 2 * spec.n)
    return big, Embedding(spec, big)
