"""The Weil representation through invariant kernels.

On the open set U = {g : det(g - I) != 0} the kernel of rho(g) is given in
closed form by the Cayley transform ansatz

    K_g(v) = nu(g) psi(1/4 omega(kappa(g) v, v)),
    nu(g)  = (e^{2N} / q^{2N}) sigma(det(kappa(g) + I)),

where e is the quadratic Gauss sum and sigma the Legendre character.  The
kernel extends multiplicatively to all of G (U.U = G), and rho(g) is then
recovered by the inverse Weyl transform, so no basis-dependent formula for
rho is ever hand-coded.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .cyclotomic import (CycNum, accumulator, as_exact, canonical_block,
                         gauss_sum, max_abs, psi)
from .field import legendre
from .heisenberg import (HeisElement, Kernel, Operator, schrodinger_pi,
                         v_convolve, weyl_inverse)
from .symplectic import (SpLieElement, SpMatrix, SympSpace, SymplecticError,
                         _det_mod, _inv_mod, cayley, embed_block_diag,
                         factor_in_U, in_U, product_point_index)


def _require_in_U(g: SpMatrix):
    if not in_U(g):
        raise SymplecticError(f"element {g.to_string()} is not in U (det(g - I) = 0)")


def nu(space: SympSpace, g: SpMatrix) -> CycNum:
    """The ansatz normalization nu(g) = (e^{2N}/q^{2N}) sigma(det(kappa(g)+I))."""
    _require_in_U(g)
    p = space.p
    k = cayley(g)
    d = _det_mod((k.mat + np.eye(space.dim, dtype=np.int64)) % p, p)
    sign = legendre(d, p)
    return gauss_sum(p) ** (2 * space.N) * Fraction(sign, p ** space.dim)


def quadratic_phase_kernel(space: SympSpace, a: SpLieElement) -> Kernel:
    """The non-normalized kernel v -> psi(1/4 omega(a v, v))."""
    expo = _quadratic_exponents(space, a.mat)
    vals = np.zeros((space.n_points, space.p), dtype=np.int64)
    vals[np.arange(space.n_points), expo] = 1
    return Kernel(space, vals, 1)


def _quadratic_exponents(space: SympSpace, a: np.ndarray) -> np.ndarray:
    """1/4 omega(a v, v) mod p for every v, in index order."""
    p, N = space.p, space.N
    vecs = space.vectors()
    av = vecs @ a.T % p
    w = (av[:, :N] * vecs[:, N:]).sum(axis=1) - (av[:, N:] * vecs[:, :N]).sum(axis=1)
    return (space.quarter * w) % p


def ansatz_kernel(space: SympSpace, g: SpMatrix) -> Kernel:
    """K_g(v) = nu(g) psi(1/4 omega(kappa(g) v, v)) for g in U."""
    _require_in_U(g)
    return quadratic_phase_kernel(space, cayley(g)).scale(nu(space, g))


class WeilKernelTable:
    """Memoized kernels K_g and operators rho(g) for one (p, N, seed).

    On U the kernel comes straight from the ansatz; off U it is the twisted
    convolution K_{g1} * K_{g2} for a seeded U-factorization g = g1 g2.  The
    factorization is re-derived deterministically per element, so identical
    seeds reproduce identical kernels regardless of call order.
    """

    def __init__(self, space: SympSpace, seed: int = 42):
        self.space = space
        self.seed = seed
        self._kernels: dict = {}
        self._rhos: dict = {}

    def _factor_rng(self, g: SpMatrix, salt: str = "") -> random.Random:
        return random.Random(f"{self.seed}|{self.space.p}|{self.space.N}|{salt}{g.to_string()}")

    def kernel_with_provenance(self, g: SpMatrix) -> tuple[Kernel, str]:
        key = g.key()
        hit = self._kernels.get(key)
        if hit is None:
            g.require_symplectic()
            if in_U(g):
                hit = (ansatz_kernel(self.space, g), "ansatz")
            else:
                g1, g2 = factor_in_U(g, self._factor_rng(g))
                k = v_convolve(ansatz_kernel(self.space, g1), ansatz_kernel(self.space, g2))
                hit = (k, f"factorization({g1.to_string()}|{g2.to_string()})")
            self._kernels[key] = hit
        return hit

    def kernel(self, g: SpMatrix) -> Kernel:
        return self.kernel_with_provenance(g)[0]

    def kernel_refactored(self, g: SpMatrix, salt: str) -> Kernel:
        """Kernel recomputed from an independently seeded factorization (or the
        ansatz for g in U); used to test that the extension is well defined."""
        if in_U(g):
            return ansatz_kernel(self.space, g)
        g1, g2 = factor_in_U(g, self._factor_rng(g, salt=salt))
        return v_convolve(ansatz_kernel(self.space, g1), ansatz_kernel(self.space, g2))

    def rho(self, g: SpMatrix) -> Operator:
        key = g.key()
        op = self._rhos.get(key)
        if op is None:
            op = weyl_inverse(self.kernel(g))
            self._rhos[key] = op
        return op


def weil_kernel(table: WeilKernelTable, g: SpMatrix) -> Kernel:
    return table.kernel(g)


def rho(table: WeilKernelTable, g: SpMatrix) -> Operator:
    return table.rho(g)


def egorov_check(table: WeilKernelTable, g: SpMatrix, h: HeisElement) -> bool:
    """rho(g) pi(h) rho(g)^{-1} = pi(g.h) with g.(v, z) = (g v, z), checked
    multiplicatively (no inverse needed)."""
    space = table.space
    r = table.rho(g)
    moved = HeisElement(space, g.apply(h.v), h.z)
    return r @ schrodinger_pi(space, h) == schrodinger_pi(space, moved) @ r


def character_rho(space: SympSpace, g: SpMatrix) -> CycNum:
    """ch_rho(g) = (e^{2N}/q^N) sigma(det(kappa(g)+I)) on U."""
    return nu(space, g) * (space.p ** space.N)


def character_tau(space: SympSpace, g: SpMatrix, h: HeisElement) -> CycNum:
    """ch_tau(g, v, z) = ch_rho(g) psi(1/4 omega(kappa(g)v, v) + z) on U x H."""
    _require_in_U(g)
    k = cayley(g)
    kv = k.mat @ np.array(h.v, dtype=np.int64) % space.p
    phase = (space.quarter * space.omega_int(kv, h.v) + h.z) % space.p
    return character_rho(space, g) * psi(phase, space.p)


def symplectic_gauss_sum(space: SympSpace, a: SpLieElement) -> CycNum:
    """G_a = sum over v in V of psi(1/4 omega(a v, v)), exactly.

    For invertible a this evaluates in closed form to e^{2N} sigma(det a).
    """
    expo = _quadratic_exponents(space, a.mat)
    counts = np.bincount(expo, minlength=space.p)
    return CycNum._from_redundant(space.p, [int(c) for c in counts])


def nu_cocycle_check(space: SympSpace, g: SpMatrix, h: SpMatrix) -> bool:
    """nu(g) nu(h) G_{kappa(g)+kappa(h)} = nu(gh) for (g, h) in W."""
    gh = g @ h
    if not (in_U(g) and in_U(h) and in_U(gh)):
        raise SymplecticError("cocycle identity needs g, h and gh in U")
    s = cayley(g) + cayley(h)
    return nu(space, g) * nu(space, h) * symplectic_gauss_sum(space, s) == nu(space, gh)


def cayley_of_product(space: SympSpace, g: SpMatrix, h: SpMatrix) -> SpLieElement:
    """kappa(g) + (I + kappa(g)) (kappa(g)+kappa(h))^{-1} (I - kappa(g)),
    the completion-of-squares expression for kappa(gh) on W."""
    p = space.p
    kg = cayley(g).mat
    kh = cayley(h).mat
    eye = np.eye(space.dim, dtype=np.int64)
    s = (kg + kh) % p
    if _det_mod(s, p) == 0:
        raise SymplecticError("kappa(g) + kappa(h) is singular; pair is not in W")
    b = (kg + (eye + kg) @ _inv_mod(s, p) @ (eye - kg)) % p
    return SpLieElement(b, p)


def product_check(table1: WeilKernelTable, table2: WeilKernelTable,
                  table_prod: WeilKernelTable, g1: SpMatrix, g2: SpMatrix) -> bool:
    """K^{V1 x V2}(i(g1, g2), (v1, v2)) = K^{V1}(g1, v1) K^{V2}(g2, v2)."""
    s1, s2, sp = table1.space, table2.space, table_prod.space
    if s1.p != s2.p or s1.p != sp.p or sp.N != s1.N + s2.N:
        raise SymplecticError("product spaces must satisfy V = V1 x V2 over one prime")
    p = sp.p
    big = table_prod.kernel(embed_block_diag(g1, g2))
    k1 = table1.kernel(g1)
    k2 = table2.kernel(g2)
    # The pair index covers V once, so the gather is a row permutation and the
    # gathered block stays canonical over big.den.
    lhs = big.vals[product_point_index(s1, s2)]           # (n1, n2, p)
    bound = p * max_abs(k1.vals) * max_abs(k2.vals) + 1
    rhs = accumulator(lhs.shape, bound)
    v2 = as_exact(k2.vals, bound)
    for c in range(p):
        col = k1.vals[:, c]
        if not col.any():
            continue
        rhs += col[:, None, None] * np.roll(v2, c, axis=-1)[None, :, :]
    rv, rd = canonical_block(rhs, k1.den * k2.den)
    return big.den == rd and np.array_equal(lhs, rv)
