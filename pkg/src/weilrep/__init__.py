"""Exact Heisenberg and Weil representations of Sp(2N, F_p) over Q(zeta_p)."""

__version__ = "0.1.0"

from .cyclotomic import CycNum, conj, embed_complex, gauss_sum, psi
from .field import FpElement, fp_inv, legendre
from .heisenberg import (HeisElement, Kernel, Operator, h_mul, schrodinger_pi,
                         v_convolve, verify_stone_von_neumann, weyl_inverse,
                         weyl_transform)
from .symplectic import (SpLieElement, SpMatrix, SympSpace, cayley,
                         enumerate_sp, factor_in_U, in_U, random_sp)
from .weil import (WeilKernelTable, ansatz_kernel, character_rho, character_tau,
                   egorov_check, nu, nu_cocycle_check, product_check, rho,
                   symplectic_gauss_sum, weil_kernel)

__all__ = [
    "CycNum", "FpElement", "HeisElement", "Kernel", "Operator", "SpLieElement",
    "SpMatrix", "SympSpace", "WeilKernelTable", "ansatz_kernel", "cayley",
    "character_rho", "character_tau", "conj", "egorov_check", "embed_complex",
    "enumerate_sp", "factor_in_U", "fp_inv", "gauss_sum", "h_mul", "in_U",
    "legendre", "nu", "nu_cocycle_check", "product_check", "psi", "random_sp",
    "rho", "schrodinger_pi", "symplectic_gauss_sum", "v_convolve",
    "verify_stone_von_neumann", "weil_kernel", "weyl_inverse", "weyl_transform",
]
