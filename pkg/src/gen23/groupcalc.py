"""Group orders: random Schreier-Sims on vectors, breadth-first enumeration, classical formulas.

Matrices over GF(p^k) are first written over the prime field (each entry becomes
its k x k multiplication matrix), so group elements multiply as integer arrays
mod p.  A vector of GF(q)^n is encoded as the integer ``sum v_i q^i``, which is
also its base-p digit code after the blow-up; the point set is [0, q^n).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import GF, FieldSpec, prime_power
from .matrix import Matrix, row_reduce

DEFAULT_BUDGET = 10**6
VERIFY_SIFTS = 64


class BudgetExceeded(RuntimeError):
    pass


class ChainError(RuntimeError):
    pass


# -- classical orders -----------------------------------------------------------------


@dataclass(frozen=True)
class GroupOrder:
    value: int
    formula_tag: str

    def __int__(self):
        return self.value


CLASSICAL_TAGS = ("Sp6", "Omega7", "SU7", "SL7")


def classical_order(tag: str, q: int) -> GroupOrder:
    """|Sp6(q)|, |Omega7(q)|, |SU7(q^2)| (q is the base field) or |SL7(q)|."""
    p, _ = prime_power(q)
    if tag == "Sp6":
        v = q**9 * (q**2 - 1) * (q**4 - 1) * (q**6 - 1)
    elif tag == "Omega7":
        if p == 2:
            raise ValueError("Omega7 order formula is for odd q")
        v = q**9 * (q**2 - 1) * (q**4 - 1) * (q**6 - 1) // 2
    elif tag == "SU7":
        v = q**21 * math.prod(q**i - (-1) ** i for i in range(2, 8))
    elif tag == "SL7":
        v = q**21 * math.prod(q**i - 1 for i in range(2, 8))
    else:
        raise ValueError(f"unknown classical group {tag!r}; choose from {CLASSICAL_TAGS}")
    return GroupOrder(v, tag)


def center_order(tag: str, q: int) -> int:
    if tag == "Sp6":
        return math.gcd(2, q - 1)
    if tag == "Omega7":
        return 1
    if tag == "SU7":
        return math.gcd(7, q + 1)
    if tag == "SL7":
        return math.gcd(7, q - 1)
    raise ValueError(f"unknown classical group {tag!r}")


def projective_classical_order(tag: str, q: int) -> GroupOrder:
    return GroupOrder(classical_order(tag, q).value // center_order(tag, q), "P" + tag)


# -- prime-field blow-up ------------------------------------------------------------------


def blow_up(A: Matrix) -> np.ndarray:
    """The (nk x nk) matrix over GF(p) of A acting on GF(p^k)^n = GF(p)^(nk)."""
    F = A.spec
    k = F.n
    if k == 1:
        return A.a.copy()
    # mult[c] = k x k matrix of multiplication by c in the basis 1, t, ..., t^(k-1)
    basis = [F.power(F.p, j) if j else 1 for j in range(k)]
    mult = np.zeros((F.q, k, k), dtype=np.int64)
    for j, bj in enumerate(basis):
        mult[:, :, j] = F.digits[F.mul_t[:, bj]]
    n = A.n
    big = mult[A.a]  # (n, n, k, k)
    return big.transpose(0, 2, 1, 3).reshape(n * k, n * k)


def _inv_mod_p(G: np.ndarray, p: int) -> np.ndarray:
    F = GF(p)
    m = G.shape[0]
    red, piv = row_reduce(F, np.concatenate([G % p, np.eye(m, dtype=np.int64)], axis=1))
    if piv[:m] != list(range(m)):
        raise ChainError("generator is singular")
    return red[:m, m:].copy()


class VectorSpace:
    """Encoding of GF(p)^d as integers in [0, p^d)."""

    def __init__(self, p: int, d: int):
        self.p, self.d = p, d
        self.size = p**d
        self.weights = p ** np.arange(d, dtype=np.int64)

    def decode(self, codes: np.ndarray) -> np.ndarray:
        return (codes[:, None] // self.weights[None, :]) % self.p

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        return vecs @ self.weights

    def act(self, G: np.ndarray, codes: np.ndarray) -> np.ndarray:
        """Images of the encoded vectors under G (left multiplication)."""
        return self.encode((self.decode(codes) @ G.T) % self.p)


# -- stabilizer chain -------------------------------------------------------------------


class _Level:
    """Orbit of one base point under the level's strong generators, as a Schreier vector."""

    def __init__(self, space: VectorSpace, point: int):
        self.point = point
        self.gens: list[int] = []              # indices into the chain's generator list
        self.parent = np.full(space.size, -1, dtype=np.int64)
        self.via = np.full(space.size, -1, dtype=np.int32)
        self.parent[point] = point
        self.orbit = np.array([point], dtype=np.int64)

    @property
    def size(self) -> int:
        return len(self.orbit)

    def contains(self, pt: int) -> bool:
        return self.parent[pt] >= 0


@dataclass
class StabChain:
    p: int
    dim: int                              # dimension over GF(p)
    base: list[int]
    levels: list = dc_field(repr=False)
    gens: list = dc_field(repr=False)     # blown-up strong generators
    inverses: list = dc_field(repr=False)
    seed: int = 0
    sifts: int = 0

    @property
    def orbit_sizes(self) -> list[int]:
        return [lv.size for lv in self.levels]

    @property
    def order(self) -> int:
        return math.prod(self.orbit_sizes)

    def strong_generator_counts(self) -> list[int]:
        return [len(lv.gens) for lv in self.levels]


def _extend_orbit(space: VectorSpace, chain: StabChain, lv: _Level, new_gens: list[int]):
    """Close the level's orbit after adding generators new_gens."""
    lv.gens.extend(new_gens)
    # images of the whole current orbit under the new generators
    frontier_src = [(lv.orbit, new_gens)]
    while True:
        found = []
        for pts, gidx in frontier_src:
            for gi in gidx:
                img = space.act(chain.gens[gi], pts)
                fresh = lv.parent[img] < 0
                if not fresh.any():
                    continue
                img_f, src_f = img[fresh], pts[fresh]
                img_u, first = np.unique(img_f, return_index=True)
                lv.parent[img_u] = src_f[first]
                lv.via[img_u] = gi
                found.append(img_u)
        if not found:
            break
        new = np.concatenate(found)
        lv.orbit = np.concatenate([lv.orbit, new])
        frontier_src = [(new, lv.gens)]


def _sift(space: VectorSpace, chain: StabChain, g: np.ndarray) -> tuple[np.ndarray, int]:
    """Strip g through the chain; returns (residue, level reached).

    The level equals len(levels) when every base image was found.
    """
    p = chain.p
    for i, lv in enumerate(chain.levels):
        beta = int(space.act(g, np.array([lv.point]))[0])
        if not lv.contains(beta):
            return g, i
        while beta != lv.point:
            gi = int(lv.via[beta])
            g = (chain.inverses[gi] @ g) % p
            beta = int(lv.parent[beta])
    return g, len(chain.levels)


class _ProductReplacement:
    def __init__(self, gens: list[np.ndarray], p: int, rng: random.Random, slots: int = 10, warmup: int = 60):
        self.p = p
        self.rng = rng
        d = gens[0].shape[0]
        self.state = [gens[i % len(gens)].copy() for i in range(max(slots, len(gens)))]
        self.acc = np.eye(d, dtype=np.int64)
        for _ in range(warmup):
            self.next()

    def next(self) -> np.ndarray:
        r = len(self.state)
        i = self.rng.randrange(r)
        j = self.rng.randrange(r - 1)
        if j >= i:
            j += 1
        if self.rng.random() < 0.5:
            self.state[i] = (self.state[i] @ self.state[j]) % self.p
        else:
            self.state[i] = (self.state[j] @ self.state[i]) % self.p
        self.acc = (self.acc @ self.state[i]) % self.p
        return self.acc


def point_count(gens: list[Matrix]) -> int:
    return gens[0].spec.q ** gens[0].n


def bsgs(gens: list[Matrix], seed: int = 0, budget: int = DEFAULT_BUDGET,
         target: int | None = None, verify: int = VERIFY_SIFTS, max_sifts: int = 20000) -> StabChain:
    """Random Schreier-Sims on nonzero vectors with base e_1, ..., e_n.

    The product of orbit sizes is always a lower bound for |<gens>|.  The run stops
    once ``verify`` consecutive random elements sift to the identity and, when a
    target order is given, the bound has reached it (or exceeded it).
    """
    if not gens:
        raise ValueError("need at least one generator")
    F = gens[0].spec
    n = gens[0].n
    if point_count(gens) > budget:
        raise BudgetExceeded(f"{F.q}^{n} = {point_count(gens)} points exceeds budget {budget}")
    p = F.p
    d = n * F.n
    space = VectorSpace(p, d)
    blown = [blow_up(g) % p for g in gens]
    chain = StabChain(p, d, [F.q**i for i in range(n)], [], [], [], seed)
    for g in blown:
        chain.gens.append(g)
        chain.inverses.append(_inv_mod_p(g, p))
    chain.levels = [_Level(space, b) for b in chain.base]
    _extend_orbit(space, chain, chain.levels[0], list(range(len(blown))))

    rng = random.Random(seed)
    pr = _ProductReplacement(blown, p, rng)
    streak = 0
    while chain.sifts < max_sifts:
        g = pr.next()
        chain.sifts += 1
        residue, level = _sift(space, chain, g)
        if level == len(chain.levels):
            streak += 1
            reached = target is None or chain.order >= target
            if streak >= verify and reached:
                break
            if streak >= 4 * verify:
                break  # stable below the target: the group is smaller
            continue
        streak = 0
        idx = len(chain.gens)
        chain.gens.append(residue)
        chain.inverses.append(_inv_mod_p(residue, p))
        # the residue fixes base points 0..level-1, so it belongs to levels 1..level
        for j in range(1, level + 1):
            _extend_orbit(space, chain, chain.levels[j], [idx])
        if target is not None and chain.order > target:
            break
    return chain


def sift_member(chain: StabChain, A: Matrix) -> bool:
    """Membership by sifting; exact once the chain is complete."""
    space = VectorSpace(chain.p, chain.dim)
    residue, level = _sift(space, chain, blow_up(A) % chain.p)
    return level == len(chain.levels) and np.array_equal(residue, np.eye(chain.dim, dtype=np.int64))


def chain_center_order(chain: StabChain, F: FieldSpec, n: int) -> int:
    """Number of scalar matrices lying in the group."""
    return sum(sift_member(chain, Matrix.scalar(F, n, lam)) for lam in F.nonzero())


# -- breadth-first enumeration ------------------------------------------------------------


@dataclass(frozen=True)
class Exceeded:
    cap: int


def bfs_enumerate(gens: list[Matrix], cap: int = 2 * 10**6) -> int | Exceeded:
    """Exact |<gens>| by breadth-first closure over hashed elements."""
    F = gens[0].spec
    p = F.p
    blown = [blow_up(g) % p for g in gens]
    d = blown[0].shape[0]
    ident = np.eye(d, dtype=np.int64)
    fits = d * d * math.log2(p) < 62
    if fits:
        w = p ** np.arange(d * d, dtype=np.int64)

        def keys(batch):
            return batch.reshape(len(batch), -1) @ w
    else:
        def keys(batch):
            return np.array([b.astype(np.uint8).tobytes() for b in batch], dtype=object)

    frontier = ident[None]
    if fits:
        seen = np.sort(keys(frontier))
    else:
        seen = set(keys(frontier).tolist())
    count = 1
    G = np.stack(blown)
    while len(frontier):
        # every product frontier_element * generator
        prods = (frontier[:, None] @ G[None]) % p
        prods = prods.reshape(-1, d, d)
        k = keys(prods)
        if fits:
            k, first = np.unique(k, return_index=True)
            fresh = ~np.isin(k, seen, assume_unique=True)
            frontier = prods[first[fresh]]
            count += int(fresh.sum())
            seen = np.union1d(seen, k[fresh])
        else:
            nxt = []
            for key, m in zip(k.tolist(), prods):
                if key not in seen:
                    seen.add(key)
                    nxt.append(m)
            count = len(seen)
            frontier = np.array(nxt).reshape(-1, d, d)
        if count > cap:
            return Exceeded(cap)
    return count
