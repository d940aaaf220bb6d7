"""The Heisenberg group H = V x F_p, its Schrodinger model, and the Weyl transform.

The group law is (v, z)(v', z') = (v + v', z + z' + 1/2 omega(v, v')).
Operators on the Schrodinger space S(L') are dense q^N x q^N matrices of
exact cyclotomic numbers, rows and columns indexed by the points of L' in
lexicographic order (most significant coordinate first).  A Kernel is the
restriction to V of a psi^{-1}-equivariant function on H, stored as p^{2N}
exact values in the same lexicographic order on V.

Both containers keep their values as an integer numpy block of shape
(..., p) over a common denominator (see `cyclotomic`), so convolution,
composition and the transforms are exact integer array work throughout.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .cyclotomic import (CycNum, accumulator, as_exact, block_entry,
                         canonical_block, max_abs, psi, rows_from_cycnums)
from .symplectic import SympSpace, SymplecticError

# Exhaustive pair sweeps of the group-law checks up to this many pairs.
PI_EXHAUSTIVE_PAIRS = 16_000
# Cache the flat convolution index table up to this many entries.
_CONV_TABLE_ENTRIES = 4_000_000


class HeisElement:
    """A point (v, z) of the Heisenberg group over (V, omega)."""

    __slots__ = ("space", "v", "z")

    def __init__(self, space: SympSpace, v, z: int):
        p = space.p
        v = tuple(int(c) % p for c in v)
        if len(v) != space.dim:
            raise SymplecticError(f"v must have {space.dim} coordinates")
        self.space = space
        self.v = v
        self.z = int(z) % p

    @classmethod
    def identity(cls, space: SympSpace) -> "HeisElement":
        return cls(space, (0,) * space.dim, 0)

    def __mul__(self, other: "HeisElement") -> "HeisElement":
        if self.space != other.space:
            raise SymplecticError("mixed Heisenberg groups")
        sp = self.space
        v = tuple((a + b) % sp.p for a, b in zip(self.v, other.v))
        z = (self.z + other.z + sp.half * sp.omega_int(self.v, other.v)) % sp.p
        return HeisElement(sp, v, z)

    def inverse(self) -> "HeisElement":
        p = self.space.p
        return HeisElement(self.space, tuple(-c % p for c in self.v), -self.z % p)

    def is_central(self) -> bool:
        return not any(self.v)

    def __eq__(self, other):
        return (isinstance(other, HeisElement) and self.space == other.space
                and self.v == other.v and self.z == other.z)

    def __hash__(self):
        return hash((self.space, self.v, self.z))

    def __repr__(self):
        return f"HeisElement(v={self.v}, z={self.z})"


def h_mul(a: HeisElement, b: HeisElement) -> HeisElement:
    return a * b


def enumerate_heisenberg(space: SympSpace):
    """All p^{2N+1} group elements, v-index major then central coordinate."""
    for v in space.vectors():
        vv = tuple(int(c) for c in v)
        for z in range(space.p):
            yield HeisElement(space, vv, z)


# -- dense exact containers -------------------------------------------


class Kernel:
    """An exact-valued function on V: p^{2N} cyclotomic numbers in index order."""

    __slots__ = ("space", "vals", "den")

    def __init__(self, space: SympSpace, vals: np.ndarray, den: int = 1, _canonical: bool = False):
        self.space = space
        if not _canonical:
            vals, den = canonical_block(np.asarray(vals), den)
        self.vals = vals
        self.den = den

    @classmethod
    def zero(cls, space: SympSpace) -> "Kernel":
        return cls(space, np.zeros((space.n_points, space.p), dtype=np.int64), 1, _canonical=True)

    @classmethod
    def delta(cls, space: SympSpace, v=None) -> "Kernel":
        vals = np.zeros((space.n_points, space.p), dtype=np.int64)
        idx = 0 if v is None else space.index_of(v)
        vals[idx, 0] = 1
        return cls(space, vals, 1, _canonical=True)

    @classmethod
    def from_values(cls, space: SympSpace, values) -> "Kernel":
        vals, den = rows_from_cycnums(values, space.p)
        if vals.shape[0] != space.n_points:
            raise ValueError(f"need {space.n_points} values, got {vals.shape[0]}")
        return cls(space, vals, den, _canonical=True)

    def __getitem__(self, v) -> CycNum:
        idx = v if isinstance(v, (int, np.integer)) else self.space.index_of(v)
        return block_entry(self.vals[idx], self.den, self.space.p)

    def values(self) -> list[CycNum]:
        return [block_entry(row, self.den, self.space.p) for row in self.vals]

    def scale(self, s) -> "Kernel":
        vals, den = _scale_block(self.vals, self.den, s, self.space.p)
        return Kernel(self.space, vals, den)

    def __add__(self, other: "Kernel") -> "Kernel":
        if self.space != other.space:
            raise SymplecticError("mixed spaces")
        vals, den = _add_blocks(self.vals, self.den, other.vals, other.den)
        return Kernel(self.space, vals, den)

    def __eq__(self, other):
        return (isinstance(other, Kernel) and self.space == other.space
                and self.den == other.den and np.array_equal(self.vals, other.vals))

    def __hash__(self):
        return hash((self.space, self.den, self.vals.tobytes() if self.vals.dtype != object
                     else tuple(int(v) for v in self.vals.flat)))

    def to_json_dict(self, include_complex: bool = False) -> dict:
        return {"p": self.space.p, "N": self.space.N,
                "values": [x.to_json_dict(include_complex) for x in self.values()]}

    def __repr__(self):
        return f"Kernel(p={self.space.p}, N={self.space.N})"


class Operator:
    """A dense q^N x q^N matrix of exact cyclotomic numbers on S(L')."""

    __slots__ = ("space", "vals", "den")

    def __init__(self, space: SympSpace, vals: np.ndarray, den: int = 1, _canonical: bool = False):
        self.space = space
        if not _canonical:
            vals, den = canonical_block(np.asarray(vals), den)
        self.vals = vals
        self.den = den

    @classmethod
    def zero(cls, space: SympSpace) -> "Operator":
        m = space.q_pow_n
        return cls(space, np.zeros((m, m, space.p), dtype=np.int64), 1, _canonical=True)

    @classmethod
    def identity(cls, space: SympSpace) -> "Operator":
        m = space.q_pow_n
        vals = np.zeros((m, m, space.p), dtype=np.int64)
        vals[np.arange(m), np.arange(m), 0] = 1
        return cls(space, vals, 1, _canonical=True)

    @classmethod
    def from_entries(cls, space: SympSpace, entries) -> "Operator":
        m = space.q_pow_n
        flat = [x for row in entries for x in row]
        if len(flat) != m * m:
            raise ValueError(f"need a {m} x {m} matrix of values")
        vals, den = rows_from_cycnums(flat, space.p)
        return cls(space, vals.reshape(m, m, space.p), den, _canonical=True)

    def entry(self, i: int, j: int) -> CycNum:
        return block_entry(self.vals[i, j], self.den, self.space.p)

    def rows(self) -> list[list[CycNum]]:
        m = self.space.q_pow_n
        return [[self.entry(i, j) for j in range(m)] for i in range(m)]

    def __matmul__(self, other: "Operator") -> "Operator":
        if self.space != other.space:
            raise SymplecticError("mixed spaces")
        p = self.space.p
        m = self.space.q_pow_n
        bound = m * p * max_abs(self.vals) * max_abs(other.vals) + 1
        out = accumulator((m, m, p), bound)
        a = as_exact(self.vals, bound)
        b = as_exact(other.vals, bound)
        for c in range(p):
            sl = a[:, :, c]
            if not sl.any():
                continue
            t = np.tensordot(sl, b, axes=(1, 0))
            out += np.roll(t, c, axis=2)
        return Operator(self.space, out, self.den * other.den)

    def __add__(self, other: "Operator") -> "Operator":
        if self.space != other.space:
            raise SymplecticError("mixed spaces")
        vals, den = _add_blocks(self.vals, self.den, other.vals, other.den)
        return Operator(self.space, vals, den)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + other.scale(-1)

    def scale(self, s) -> "Operator":
        vals, den = _scale_block(self.vals, self.den, s, self.space.p)
        return Operator(self.space, vals, den)

    def conj_transpose(self) -> "Operator":
        p = self.space.p
        rev = self.vals[:, :, (-np.arange(p)) % p]
        return Operator(self.space, rev.transpose(1, 0, 2), self.den)

    def trace(self) -> CycNum:
        vec = self.vals.trace(axis1=0, axis2=1)
        return block_entry(vec, self.den, self.space.p)

    def is_identity(self) -> bool:
        return self == Operator.identity(self.space)

    def __eq__(self, other):
        return (isinstance(other, Operator) and self.space == other.space
                and self.den == other.den and np.array_equal(self.vals, other.vals))

    def __repr__(self):
        return f"Operator(p={self.space.p}, N={self.space.N}, dim={self.space.q_pow_n})"


def _add_blocks(v1: np.ndarray, d1: int, v2: np.ndarray, d2: int):
    bound = (max_abs(v1) * d2 + max_abs(v2) * d1) + 1
    a = as_exact(v1, bound)
    b = as_exact(v2, bound)
    return canonical_block(a * d2 + b * d1, d1 * d2)


def _scale_block(vals: np.ndarray, den: int, s, p: int):
    if isinstance(s, int):
        s = CycNum.from_int(s, p)
    if not isinstance(s, CycNum):
        s = CycNum.from_fraction(s, p)
    if s.p != p:
        raise ValueError("scalar from the wrong cyclotomic field")
    bound = p * max_abs(vals) * max((abs(c) for c in s.num), default=0) + 1
    out = accumulator(vals.shape, bound)
    v = as_exact(vals, bound)
    for c, coef in enumerate(s.num):
        if coef:
            out += int(coef) * np.roll(v, c, axis=-1)
    return canonical_block(out, den * s.den)


# -- the Schrodinger model --------------------------------------------


def schrodinger_pi(space: SympSpace, h: HeisElement) -> Operator:
    """The Schrodinger-model operator pi(v, z).

    With v = l + l' (l in L, l' in L'), pi(v, z) is psi(z - 1/2 omega(l, l'))
    times the modulation by l and the translation by l':
    [pi(v,z) f](x) = psi(z - 1/2 omega(l,l')) psi(omega(x,l)) f(x + l').
    """
    p, N = space.p, space.N
    m = space.q_pow_n
    l = np.array(h.v[:N], dtype=np.int64)
    lp = np.array(h.v[N:], dtype=np.int64)
    xs = space.points_lprime()
    # omega(x, l) = -x.l for x in L', and omega(l, l') = l.l'.
    expo = (h.z - space.half * int(l @ lp) - xs @ l) % p
    cols = _lprime_add_index(space, lp)
    vals = np.zeros((m, m, p), dtype=np.int64)
    vals[np.arange(m), cols, expo] = 1
    return Operator(space, vals, 1)


def _lprime_add_index(space: SympSpace, shift: np.ndarray) -> np.ndarray:
    """Index of x + shift for every point x of L'."""
    p, N = space.p, space.N
    pts = (space.points_lprime() + shift[None, :]) % p
    powers = p ** np.arange(N - 1, -1, -1)
    return pts @ powers


def weyl_transform(a: Operator) -> Kernel:
    """The kernel of an operator on V, free of any basis choice:
    v -> (1/q^N) Tr(a pi((v, 0)^{-1})), an exact function on V."""
    space = a.space
    p, N = space.p, space.N
    m = space.q_pow_n
    n = space.n_points
    bound = m * max_abs(a.vals) + 1
    out = accumulator((n, p), bound)
    avals = as_exact(a.vals, bound)
    ys = space.points_lprime()
    col = np.arange(m)
    crange = np.arange(p)
    for i, v in enumerate(space.vectors()):
        ul = -v[:N] % p
        up = -v[N:] % p
        rows = _lprime_add_index(space, up)
        gathered = avals[rows, col]                      # (m, p)
        expo = (-space.half * int(ul @ up) - ys @ ul) % p
        shifted_cols = (crange[None, :] - expo[:, None]) % p
        out[i] = np.take_along_axis(gathered, shifted_cols, axis=1).sum(axis=0)
    return Kernel(space, out, a.den * m)


def weyl_inverse(f: Kernel) -> Operator:
    """The extended action on S(V): f -> sum_v f(v) pi(v, 0), inverse of the
    Weyl transform."""
    space = f.space
    p, N = space.p, space.N
    m = space.q_pow_n
    bound = space.n_points * max_abs(f.vals) + 1
    out = accumulator((m, m, p), bound)
    fvals = as_exact(f.vals, bound)
    xs = space.points_lprime()
    rows = np.arange(m)
    crange = np.arange(p)
    for i, v in enumerate(space.vectors()):
        if not fvals[i].any():
            continue
        l = v[:N]
        lp = v[N:]
        cols = _lprime_add_index(space, lp)
        expo = (-space.half * int(l @ lp) - xs @ l) % p
        zcols = (expo[:, None] + crange[None, :]) % p
        out[rows[:, None], cols[:, None], zcols] += fvals[i][None, :]
    return Operator(space, out, f.den)


# -- twisted convolution ----------------------------------------------


@lru_cache(maxsize=8)
def _conv_index_table(p: int, N: int) -> np.ndarray | None:
    """Flat index table for the twisted convolution, or None if too large.

    Entry [(v1, c1), (v, c)] is the flat index of (v - v1, c - c1 + phase)
    with phase = 1/2 omega(v1, v - v1) = 1/2 omega(v1, v) mod p.
    """
    space = SympSpace(p, N)
    n = space.n_points
    if (n * p) ** 2 > _CONV_TABLE_ENTRIES:
        return None
    vecs = space.vectors()
    N2 = space.N
    gram = (vecs[:, :N2] @ vecs[:, N2:].T - vecs[:, N2:] @ vecs[:, :N2].T) % p
    phase = (space.half * gram) % p                      # (n, n): 1/2 omega(v1, v)
    powers = p ** np.arange(space.dim - 1, -1, -1)
    diff = ((vecs[None, :, :] - vecs[:, None, :]) % p) @ powers   # (n, n): idx(v - v1)
    c1 = np.arange(p)
    c = np.arange(p)
    # the product of zeta^{c1} and zeta^{c2} lands at c = c1 + c2 + phase
    zidx = (c[None, None, None, :] - c1[None, :, None, None] - phase[:, None, :, None]) % p
    table = diff[:, None, :, None] * p + zidx
    table = table.reshape(n * p, n * p).astype(np.int64)
    table.setflags(write=False)
    return table


def v_convolve(f: Kernel, g: Kernel) -> Kernel:
    """Twisted convolution on S(V) carrying operator composition:

        (f * g)(v) = sum over v1 + v2 = v of psi(1/2 omega(v1, v2)) f(v1) g(v2).

    This is the restriction to V of the normalized convolution of the
    psi^{-1}-equivariant lifts on H; the Weyl transform turns operator
    products into exactly this product.
    """
    if f.space != g.space:
        raise SymplecticError("mixed spaces")
    space = f.space
    p = space.p
    n = space.n_points
    den = f.den * g.den
    bound = n * p * max_abs(f.vals) * max_abs(g.vals) + 1
    fvals = as_exact(f.vals, bound)
    gvals = as_exact(g.vals, bound)
    table = _conv_index_table(p, space.N)
    if table is not None:
        gathered = gvals.reshape(-1)[table]
        out = np.dot(fvals.reshape(-1), gathered).reshape(n, p)
        return Kernel(space, out, den)
    # Large spaces: accumulate one v1 at a time; v1 + . is a bijection, so the
    # scatter indices are unique and fancy += is exact.
    out = accumulator((n, p), bound)
    vecs = space.vectors()
    powers = p ** np.arange(space.dim - 1, -1, -1)
    crange = np.arange(p)
    for i1 in range(n):
        if not fvals[i1].any():
            continue
        v1 = vecs[i1]
        tgt = ((v1[None, :] + vecs) % p) @ powers
        phase = (space.half * space.omega_rows(v1, vecs)) % p
        shifted_cols = (crange[None, :] + phase[:, None]) % p
        for c1 in range(p):
            coef = fvals[i1][c1]
            if coef == 0:
                continue
            cols = (shifted_cols + c1) % p
            out[tgt[:, None], cols] += coef * gvals
    return Kernel(space, out, den)


# -- Stone-von Neumann checks -----------------------------------------


def verify_stone_von_neumann(space: SympSpace, rng: random.Random | None = None) -> bool:
    """Check that pi is an irreducible representation with central character psi.

    (a) pi(h1 h2) = pi(h1) pi(h2), exhaustively when |H|^2 is small and on
        seeded random pairs otherwise;
    (b) pi(0, z) = psi(z) Id;
    (c) (1/|H|) sum over h of |Tr pi(h)|^2 = 1, exactly.
    """
    elements = list(enumerate_heisenberg(space))
    ops = {h: schrodinger_pi(space, h) for h in elements}
    if len(elements) ** 2 <= PI_EXHAUSTIVE_PAIRS:
        pairs = ((a, b) for a in elements for b in elements)
    else:
        rng = rng or random.Random(0)
        pairs = ((rng.choice(elements), rng.choice(elements)) for _ in range(2000))
    for a, b in pairs:
        if ops[a] @ ops[b] != ops[a * b]:
            return False
    ident = Operator.identity(space)
    for z in range(space.p):
        if ops[HeisElement(space, (0,) * space.dim, z)] != ident.scale(psi(z, space.p)):
            return False
    total = CycNum.zero(space.p)
    for h in elements:
        t = ops[h].trace()
        total = total + t * t.conj()
    return total == CycNum.from_int(len(elements), space.p)
