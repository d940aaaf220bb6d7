"""The symplectic space (V, omega), the group Sp(2N, F_p), and the Cayley transform.

Coordinates are fixed once: V = F_p^{2N} with basis e_1, ..., e_{2N},
omega(u, v) = u^T J v for J = [[0, I_N], [-I_N, 0]].  The Lagrangian
L = span(e_1..e_N) acts by modulations and L' = span(e_{N+1}..e_{2N})
carries the Schrodinger model; points of V are indexed lexicographically
with the most significant coordinate first.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .field import FpElement, check_odd_prime, half, quarter


class SymplecticError(ValueError):
    """Domain violation: singular matrix, non-symplectic input, bad dimensions."""


class FactorizationError(RuntimeError):
    """Rejection sampling for U-factorization exhausted its attempt bound."""


@lru_cache(maxsize=None)
def _vector_table(p: int, dim: int) -> np.ndarray:
    """All points of F_p^dim, row i = digits of i base p, most significant first."""
    n = p ** dim
    idx = np.arange(n)
    cols = []
    for k in range(dim):
        cols.append((idx // p ** (dim - 1 - k)) % p)
    table = np.stack(cols, axis=1).astype(np.int64)
    table.setflags(write=False)
    return table


class SympSpace:
    """The symplectic space over F_p of dimension 2N, plus index plumbing."""

    __slots__ = ("p", "N")

    def __init__(self, p: int, N: int):
        check_odd_prime(p)
        if N < 1:
            raise SymplecticError(f"N must be a positive integer, got {N}")
        self.p = p
        self.N = N

    @property
    def dim(self) -> int:
        return 2 * self.N

    @property
    def n_points(self) -> int:
        return self.p ** self.dim

    @property
    def q_pow_n(self) -> int:
        """dim of the Schrodinger space S(L') = q^N."""
        return self.p ** self.N

    @property
    def J(self) -> np.ndarray:
        N = self.N
        J = np.zeros((2 * N, 2 * N), dtype=np.int64)
        J[:N, N:] = np.eye(N, dtype=np.int64)
        J[N:, :N] = -np.eye(N, dtype=np.int64) % self.p
        return J

    @property
    def half(self) -> int:
        return half(self.p)

    @property
    def quarter(self) -> int:
        return quarter(self.p)

    def vectors(self) -> np.ndarray:
        """(n_points, 2N) table of all vectors in index order."""
        return _vector_table(self.p, self.dim)

    def points_lprime(self) -> np.ndarray:
        """(q^N, N) table of the points of L' in index order."""
        return _vector_table(self.p, self.N)

    def index_of(self, v) -> int:
        idx = 0
        for c in v:
            idx = idx * self.p + int(c) % self.p
        return idx

    def vector_at(self, idx: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.vectors()[idx])

    def omega(self, u, v) -> FpElement:
        """omega(u, v) = u^T J v."""
        return FpElement(self.omega_int(u, v), self.p)

    def omega_int(self, u, v) -> int:
        u = np.asarray([int(c) for c in u], dtype=np.int64)
        v = np.asarray([int(c) for c in v], dtype=np.int64)
        if u.shape != (self.dim,) or v.shape != (self.dim,):
            raise SymplecticError(f"vectors must have {self.dim} coordinates")
        N = self.N
        return int(u[:N] @ v[N:] - u[N:] @ v[:N]) % self.p

    def omega_rows(self, u: np.ndarray, rows: np.ndarray) -> np.ndarray:
        """omega(u, r) for every row r of `rows`, vectorized, values in [0, p)."""
        N = self.N
        return (rows[:, N:] @ u[:N] - rows[:, :N] @ u[N:]) % self.p

    def __eq__(self, other):
        return isinstance(other, SympSpace) and (self.p, self.N) == (other.p, other.N)

    def __hash__(self):
        return hash((self.p, self.N))

    def __repr__(self):
        return f"SympSpace(p={self.p}, N={self.N})"


# -- exact linear algebra mod p ---------------------------------------


def _det_mod(a: np.ndarray, p: int) -> int:
    a = a.copy() % p
    n = a.shape[0]
    det = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r, col] % p:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            det = -det
        det = det * int(a[col, col]) % p
        inv = pow(int(a[col, col]), -1, p)
        a[col] = a[col] * inv % p
        for r in range(col + 1, n):
            if a[r, col]:
                a[r] = (a[r] - a[r, col] * a[col]) % p
    return int(det % p)


def _inv_mod(a: np.ndarray, p: int) -> np.ndarray:
    a = a.copy() % p
    n = a.shape[0]
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r, col] % p:
                piv = r
                break
        if piv is None:
            raise SymplecticError("matrix is singular mod p")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


class _ModMatrix:
    """Shared behaviour of 2N x 2N matrices over F_p."""

    __slots__ = ("p", "mat")

    def __init__(self, entries, p: int):
        check_odd_prime(p)
        mat = np.asarray(entries, dtype=np.int64) % p
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or mat.shape[0] % 2:
            raise SymplecticError(f"expected a square even-dimensional matrix, got shape {mat.shape}")
        self.p = p
        self.mat = mat

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @property
    def N(self) -> int:
        return self.dim // 2

    def space(self) -> SympSpace:
        return SympSpace(self.p, self.N)

    def det(self) -> int:
        return _det_mod(self.mat, self.p)

    def _same(self, other):
        if not isinstance(other, _ModMatrix) or other.p != self.p or other.dim != self.dim:
            raise SymplecticError("mixed moduli or dimensions")
        return other

    def __eq__(self, other):
        return (isinstance(other, _ModMatrix) and self.p == other.p
                and np.array_equal(self.mat, other.mat))

    def __hash__(self):
        return hash((self.p, self.mat.tobytes()))

    def key(self) -> tuple:
        return (self.p, self.dim, self.mat.tobytes())

    def to_string(self) -> str:
        return ";".join(",".join(str(int(c)) for c in row) for row in self.mat)

    def __repr__(self):
        return f"{type(self).__name__}('{self.to_string()}', p={self.p})"


class SpMatrix(_ModMatrix):
    """A 2N x 2N matrix over F_p; also used unvalidated for End(V) intermediates."""

    @classmethod
    def identity(cls, space: SympSpace) -> "SpMatrix":
        return cls(np.eye(space.dim, dtype=np.int64), space.p)

    @classmethod
    def from_string(cls, text: str, p: int) -> "SpMatrix":
        try:
            rows = [[int(c) for c in row.split(",")] for row in text.strip().split(";")]
        except ValueError as exc:
            raise SymplecticError(f"cannot parse matrix {text!r}: {exc}") from None
        return cls(rows, p)

    def is_symplectic(self) -> bool:
        J = self.space().J
        return np.array_equal(self.mat.T @ J @ self.mat % self.p, J % self.p)

    def require_symplectic(self) -> "SpMatrix":
        if not self.is_symplectic():
            raise SymplecticError(f"matrix {self.to_string()} is not symplectic mod {self.p}")
        return self

    def __matmul__(self, other):
        other = self._same(other)
        return SpMatrix(self.mat @ other.mat % self.p, self.p)

    def __add__(self, other):
        other = self._same(other)
        return SpMatrix((self.mat + other.mat) % self.p, self.p)

    def __sub__(self, other):
        other = self._same(other)
        return SpMatrix((self.mat - other.mat) % self.p, self.p)

    def __neg__(self):
        return SpMatrix(-self.mat % self.p, self.p)

    def inverse(self) -> "SpMatrix":
        return SpMatrix(_inv_mod(self.mat, self.p), self.p)

    def apply(self, v) -> tuple[int, ...]:
        vv = np.asarray([int(c) for c in v], dtype=np.int64)
        return tuple(int(c) for c in self.mat @ vv % self.p)


class SpLieElement(_ModMatrix):
    """An element a of sp(V): omega(a v, u) = -omega(v, a u), i.e. Ja symmetric."""

    def __init__(self, entries, p: int):
        super().__init__(entries, p)
        J = self.space().J
        Ja = J @ self.mat % p
        if not np.array_equal(Ja, Ja.T % p):
            raise SymplecticError(f"matrix {self.to_string()} is not in sp (Ja not symmetric)")

    def __add__(self, other):
        other = self._same(other)
        return SpLieElement((self.mat + other.mat) % self.p, self.p)

    def __neg__(self):
        return SpLieElement(-self.mat % self.p, self.p)

    def as_endomorphism(self) -> SpMatrix:
        return SpMatrix(self.mat, self.p)


# -- the open set U and the Cayley transform -------------------------


def in_O(m: _ModMatrix) -> bool:
    """True iff m - I is invertible (membership in the open set O of End(V))."""
    eye = np.eye(m.dim, dtype=np.int64)
    return _det_mod((m.mat - eye) % m.p, m.p) != 0


def in_U(g: SpMatrix) -> bool:
    """True iff g lies in U = Sp cap O, i.e. det(g - I) != 0."""
    return in_O(g)


def cayley(g: "SpMatrix | SpLieElement"):
    """The Cayley transform kappa(g) = (g + I)(g - I)^{-1}.

    kappa identifies U with an open part of sp(V) and is an involution:
    applied to a group element it lands in the Lie algebra, applied to a
    Lie algebra element (with a - I invertible) it lands back in the group.
    The two factors commute, so the fraction notation is unambiguous.
    """
    p = g.p
    eye = np.eye(g.dim, dtype=np.int64)
    denom = (g.mat - eye) % p
    if _det_mod(denom, p) == 0:
        raise SymplecticError(f"Cayley transform undefined: det(g - I) = 0 for {g.to_string()}")
    out = (g.mat + eye) @ _inv_mod(denom, p) % p
    if isinstance(g, SpLieElement):
        return SpMatrix(out, p).require_symplectic()
    return SpLieElement(out, p)


def cayley_plus_identity_det(g: SpMatrix) -> int:
    """det(kappa(g) + I), nonzero on all of U since kappa(g) + I = 2g(g-I)^{-1}."""
    k = cayley(g)
    eye = np.eye(g.dim, dtype=np.int64)
    return _det_mod((k.mat + eye) % g.p, g.p)


# -- enumeration and random generation --------------------------------


def enumerate_sp(space: SympSpace):
    """All of Sp(2, F_p) = SL(2, F_p) in a fixed lexicographic order (N = 1 only)."""
    if space.N != 1:
        raise SymplecticError("exhaustive enumeration is only supported for N = 1; use random_sp")
    p = space.p
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p == 1:
                        yield SpMatrix([[a, b], [c, d]], p)


def sp_order(space: SympSpace) -> int:
    """|SL2(F_p)| = p(p^2 - 1); defined for N = 1."""
    if space.N != 1:
        raise SymplecticError("closed-form order implemented for N = 1 only")
    p = space.p
    return p * (p * p - 1)


def transvection(space: SympSpace, u, lam: int) -> SpMatrix:
    """T_{u,lam}: v -> v + lam * omega(v, u) * u, symplectic for every u, lam."""
    p = space.p
    uu = np.asarray([int(c) for c in u], dtype=np.int64) % p
    if not uu.any():
        raise SymplecticError("transvection direction must be nonzero")
    Ju = space.J @ uu % p
    mat = (np.eye(space.dim, dtype=np.int64) + lam * np.outer(uu, Ju)) % p
    return SpMatrix(mat, p)


def random_sp(space: SympSpace, rng: random.Random) -> SpMatrix:
    """Seeded random group element: a product of 10*N random transvections."""
    p = space.p
    g = SpMatrix.identity(space)
    for _ in range(10 * space.N):
        while True:
            u = tuple(rng.randrange(p) for _ in range(space.dim))
            if any(u):
                break
        lam = rng.randrange(p)
        g = g @ transvection(space, u, lam)
    return g


def random_sp_lie(space: SympSpace, rng: random.Random) -> SpLieElement:
    """Seeded random Lie algebra element: a = J^{-1} S for a random symmetric S."""
    p = space.p
    d = space.dim
    s = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(i, d):
            s[i, j] = s[j, i] = rng.randrange(p)
    Jinv = _inv_mod(space.J % p, p)
    return SpLieElement(Jinv @ s % p, p)


FACTOR_ATTEMPTS = 10_000


def factor_in_U(g: SpMatrix, rng: random.Random, attempts: int = FACTOR_ATTEMPTS):
    """Write g = g1 * g2 with both factors in U, by seeded rejection sampling.

    U is the complement of a hypersurface, so acceptance is fast; the attempt
    bound exists so a pathological case surfaces loudly instead of spinning.
    """
    space = g.space()
    for _ in range(attempts):
        s = random_sp(space, rng)
        if not in_U(s):
            continue
        rest = s.inverse() @ g
        if in_U(rest):
            return s, rest
    raise FactorizationError(
        f"no U-factorization of {g.to_string()} found in {attempts} attempts (p={g.p}, N={space.N})")


# -- block-diagonal products ------------------------------------------


def embed_block_diag(g1: SpMatrix, g2: SpMatrix) -> SpMatrix:
    """Embed (g1, g2) in Sp(V1 x V2) under the coordinate convention
    (v1, v2) = (l1, l2, l1', l2'), which makes omega = omega1 + omega2."""
    if g1.p != g2.p:
        raise SymplecticError("mixed moduli in product embedding")
    p = g1.p
    n1, n2 = g1.N, g2.N
    d = 2 * (n1 + n2)
    out = np.zeros((d, d), dtype=np.int64)
    for (si, sj), block in (((0, 0), g1.mat[:n1, :n1]), ((0, n1 + n2), g1.mat[:n1, n1:]),
                            ((n1 + n2, 0), g1.mat[n1:, :n1]), ((n1 + n2, n1 + n2), g1.mat[n1:, n1:])):
        out[si:si + n1, sj:sj + n1] = block
    for (si, sj), block in (((n1, n1), g2.mat[:n2, :n2]), ((n1, n1 + n2 + n1), g2.mat[:n2, n2:]),
                            ((n1 + n2 + n1, n1), g2.mat[n2:, :n2]),
                            ((n1 + n2 + n1, n1 + n2 + n1), g2.mat[n2:, n2:])):
        out[si:si + n2, sj:sj + n2] = block
    return SpMatrix(out, p)


@lru_cache(maxsize=8)
def _product_point_index(p: int, N1: int, N2: int) -> np.ndarray:
    v1 = _vector_table(p, 2 * N1)
    v2 = _vector_table(p, 2 * N2)
    d = 2 * (N1 + N2)
    powers = p ** np.arange(d - 1, -1, -1)
    w1 = (v1[:, :N1] @ powers[:N1] + v1[:, N1:] @ powers[N1 + N2:N1 + N2 + N1])
    w2 = (v2[:, :N2] @ powers[N1:N1 + N2] + v2[:, N2:] @ powers[N1 + N2 + N1:])
    out = w1[:, None] + w2[None, :]
    out.setflags(write=False)
    return out


def product_point_index(space1: SympSpace, space2: SympSpace) -> np.ndarray:
    """(n1, n2) table: index in V1 x V2 of the pair (v1, v2) under embed_block_diag."""
    if space1.p != space2.p:
        raise SymplecticError("mixed moduli in product embedding")
    return _product_point_index(space1.p, space1.N, space2.N)
