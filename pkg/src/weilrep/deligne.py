"""Schrodinger-realization kernels: matrix coefficients of rho from the
invariant kernel, by direct summation over L and by a fiberwise finite
Fourier transform along L followed by the change of variables
alpha(g, x, y) = (g, y - x, x + y).

The L-L' duality pairing is <n', l> = psi(1/2 omega(n', l)); the half is
what makes the Fourier route agree exactly with the direct summation (and
both with the matrix of rho(g)) under the fixed matrix-coefficient
convention <delta_x | A delta_y> = A[x, y].
"""

from __future__ import annotations

import numpy as np

from .cyclotomic import accumulator, as_exact, max_abs
from .heisenberg import Operator
from .symplectic import SpMatrix, SympSpace, SymplecticError
from .weil import WeilKernelTable


class SchrodingerKernel:
    """K_{L,L'}(g): the q^N x q^N table of matrix coefficients of rho(g)."""

    __slots__ = ("g", "matrix")

    def __init__(self, g: SpMatrix, matrix: Operator):
        self.g = g
        self.matrix = matrix

    @property
    def space(self) -> SympSpace:
        return self.matrix.space

    def __eq__(self, other):
        return (isinstance(other, SchrodingerKernel) and self.g == other.g
                and self.matrix == other.matrix)

    def to_json_dict(self, include_complex: bool = False) -> dict:
        return {"g": self.g.to_string(),
                "matrix": [[x.to_json_dict(include_complex) for x in row]
                           for row in self.matrix.rows()]}

    def __repr__(self):
        return f"SchrodingerKernel(g='{self.g.to_string()}', p={self.space.p}, N={self.space.N})"


def _pair_tables(space: SympSpace):
    """Index helpers on L' x L': idx(y - x), idx(x + y) and the point table."""
    p, N = space.p, space.N
    ys = space.points_lprime()
    powers = p ** np.arange(N - 1, -1, -1)
    diff = ((ys[None, :, :] - ys[:, None, :]) % p) @ powers   # [x, y] -> idx(y - x)
    sums = ((ys[:, None, :] + ys[None, :, :]) % p) @ powers   # [x, y] -> idx(x + y)
    return ys, powers, diff, sums


def deligne_kernel_direct(table: WeilKernelTable, g: SpMatrix) -> SchrodingerKernel:
    """K_{L,L'}(g, x, y) = sum over l in L of K(g, y - x + l) psi(1/2 omega(x+y, l))."""
    space = table.space
    p, N = space.p, space.N
    m = space.q_pow_n
    kern = table.kernel(g)
    ys, powers, diff, sums = _pair_tables(space)
    sum_pts = ((ys[:, None, :] + ys[None, :, :]) % p)         # (m, m, N) coords of x + y
    bound = m * max_abs(kern.vals) + 1
    out = accumulator((m, m, p), bound)
    kvals = as_exact(kern.vals, bound)
    crange = np.arange(p)
    for li in range(m):
        lc = space.points_lprime()[li]          # coordinates of l in L ~ F_p^N
        vidx = li * m + diff                    # index of (l, y - x) in V
        # omega((0, x+y), (l, 0)) = -(x+y).l
        phase = (-space.half * (sum_pts @ lc)) % p
        cols = (crange[None, None, :] - phase[:, :, None]) % p
        out += np.take_along_axis(kvals[vidx], cols, axis=2)
    return SchrodingerKernel(g, Operator(space, out, kern.den))


def deligne_kernel_fourier(table: WeilKernelTable, g: SpMatrix) -> SchrodingerKernel:
    """The same kernel via K_{L,L'} = alpha^* Four_L(K).

    Four_L is the non-normalized fiberwise Fourier transform from functions
    on L' x L to functions on L' x L', against the pairing psi(1/2 omega(n', l));
    the result is then pulled back along alpha(g, x, y) = (g, y - x, x + y).
    """
    space = table.space
    p, N = space.p, space.N
    m = space.q_pow_n
    kern = table.kernel(g)
    # K as a function on L' x L: F[m', l] = K(l + m'); L holds the high digits.
    bound = m * max_abs(kern.vals) + 1
    kvals = as_exact(kern.vals, bound)
    F = kvals.reshape(m, m, p).transpose(1, 0, 2)             # [m', l, c]
    lpts = space.points_lprime()
    crange = np.arange(p)
    four = accumulator((m, m, p), bound)                      # [m', n', c]
    for li in range(m):
        lc = lpts[li]
        # <n', l> = psi(1/2 omega((0, n'), (l, 0))) = psi(-1/2 n'.l)
        phase = (-space.half * (lpts @ lc)) % p               # (m,) over n'
        cols = (crange[None, :] - phase[:, None]) % p         # (m, p)
        four += F[:, li, :][:, cols]
    _, _, diff, sums = _pair_tables(space)
    out = four[diff, sums]
    return SchrodingerKernel(g, Operator(space, out, kern.den))


def kernel_compose(a: SchrodingerKernel, b: SchrodingerKernel) -> SchrodingerKernel:
    """Matrix composition (A o B)[x, y] = sum_t A[x, t] B[t, y]; carries
    deligne(g) o deligne(h) = deligne(gh)."""
    if a.space != b.space:
        raise SymplecticError("mixed spaces in kernel composition")
    return SchrodingerKernel(a.g @ b.g, a.matrix @ b.matrix)
