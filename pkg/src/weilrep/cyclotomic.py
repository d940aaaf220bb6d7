"""Exact arithmetic in the cyclotomic field Q(zeta_p).

A number is stored as p-1 rational coefficients over the power basis
1, zeta, ..., zeta^{p-2}, where zeta is a fixed primitive p-th root of
unity.  The power zeta^{p-1} is always rewritten through the minimal
polynomial Phi_p,

    zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}),

so two numbers are equal iff their coefficient arrays are equal.
Internally the coefficients share a single positive integer denominator
and gcd(numerators, denominator) = 1, which makes the canonical form
unique and equality structural.

The additive character is fixed once and for all as psi(z) = zeta^z;
every identity verified downstream is invariant under this choice.

This module also provides the integer-array plumbing shared by the
dense kernel/operator containers: those store blocks of cyclotomic
numbers as numpy arrays of shape (..., p) in the redundant basis
1, zeta, ..., zeta^{p-1} over a common denominator, because cyclic
shifts of the last axis realize multiplication by roots of unity.
Arrays are int64 while provably safe and are promoted to Python-int
(object dtype) arrays before any operation that could overflow, so
exactness never depends on magnitudes.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .field import FpElement, check_odd_prime

# Conservative headroom below 2^63 for int64 accumulation.
_INT64_SAFE = 1 << 62


class CycNum:
    """An element of Q(zeta_p) in canonical form."""

    __slots__ = ("p", "num", "den")

    def __init__(self, p: int, num, den: int = 1):
        check_odd_prime(p)
        num = [int(c) for c in num]
        if len(num) != p - 1:
            raise ValueError(f"need {p - 1} coefficients for p={p}, got {len(num)}")
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num = [-c for c in num]
            den = -den
        g = math.gcd(den, *num) if any(num) else den
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.p = p
        self.num = tuple(num)
        self.den = den

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, p: int) -> "CycNum":
        return cls(p, [0] * (p - 1))

    @classmethod
    def one(cls, p: int) -> "CycNum":
        return cls.from_int(1, p)

    @classmethod
    def from_int(cls, k: int, p: int) -> "CycNum":
        return cls(p, [k] + [0] * (p - 2))

    @classmethod
    def from_fraction(cls, fr: Fraction, p: int) -> "CycNum":
        return cls(p, [fr.numerator] + [0] * (p - 2), fr.denominator)

    @classmethod
    def zeta_power(cls, p: int, k: int) -> "CycNum":
        """zeta^k reduced to the canonical basis."""
        k %= p
        if k == p - 1:
            return cls(p, [-1] * (p - 1))
        num = [0] * (p - 1)
        num[k] = 1
        return cls(p, num)

    @classmethod
    def _from_redundant(cls, p: int, vec, den: int = 1) -> "CycNum":
        """Build from p coefficients over 1, zeta, ..., zeta^{p-1}."""
        vec = [int(c) for c in vec]
        last = vec[p - 1]
        return cls(p, [c - last for c in vec[: p - 1]], den)

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CycNum):
            if other.p != self.p:
                raise ValueError(f"mixed cyclotomic fields p={self.p} and p={other.p}")
            return other
        if isinstance(other, int):
            return CycNum.from_int(other, self.p)
        if isinstance(other, Fraction):
            return CycNum.from_fraction(other, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d1, d2 = self.den, other.den
        return CycNum(self.p, [a * d2 + b * d1 for a, b in zip(self.num, other.num)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.p, [-c for c in self.num], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.p
        # Lift to the redundant basis and convolve cyclically: zeta^p = 1.
        a = self.num + (0,)
        b = other.num + (0,)
        out = [0] * p
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    out[k if k < p else k - p] += ai * bj
        return CycNum._from_redundant(p, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by an exact rational scalar (general inverses are not needed here)."""
        if isinstance(other, int):
            return CycNum(self.p, self.num, self.den * other)
        if isinstance(other, Fraction):
            return CycNum(self.p, [c * other.denominator for c in self.num],
                          self.den * other.numerator)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        acc = CycNum.one(self.p)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base if k > 1 else base
            k >>= 1
        return acc

    def conj(self) -> "CycNum":
        """Complex conjugation, i.e. the field automorphism zeta -> zeta^{p-1}."""
        p = self.p
        vec = [0] * p
        for k, c in enumerate(self.num):
            vec[(p - k) % p] = c
        return CycNum._from_redundant(p, vec, self.den)

    # -- predicates and views ----------------------------------------

    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def coefficients(self) -> list[Fraction]:
        """Coefficients of 1, zeta, ..., zeta^{p-2} as exact fractions."""
        return [Fraction(c, self.den) for c in self.num]

    def embed(self) -> complex:
        """Numerical evaluation at zeta = exp(2*pi*i/p)."""
        return sum(c * cmath.exp(2j * cmath.pi * k / self.p)
                   for k, c in enumerate(self.num)) / self.den

    def to_json_dict(self, include_complex: bool = False) -> dict:
        coeffs = [[str(fr.numerator), str(fr.denominator)] for fr in self.coefficients()]
        out = {"p": self.p, "coeffs": coeffs}
        if include_complex:
            # display-only: rounded so exact zeros do not print as 1e-16 noise
            z = embed_complex(self, ndigits=12)
            out["complex"] = [z.real, z.imag]
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.p == other.p and self.den == other.den and self.num == other.num

    def __hash__(self):
        return hash((self.p, self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for k, c in enumerate(self.num):
            if c == 0:
                continue
            coeff = str(Fraction(c, self.den))
            if k == 0:
                terms.append(coeff)
            elif coeff == "1":
                terms.append(f"z^{k}" if k > 1 else "z")
            elif coeff == "-1":
                terms.append(f"-z^{k}" if k > 1 else "-z")
            else:
                terms.append(f"{coeff}*z^{k}" if k > 1 else f"{coeff}*z")
        return " + ".join(terms).replace("+ -", "- ")


# -- the character, the Gauss sum, and friends -----------------------


def psi(z: "int | FpElement", p: int | None = None) -> CycNum:
    """The additive character psi(z) = zeta^z of F_p."""
    if isinstance(z, FpElement):
        p = z.p
        z = z.value
    if p is None:
        raise ValueError("psi of an int needs an explicit modulus p")
    return CycNum.zeta_power(p, z)


def conj(x: CycNum) -> CycNum:
    return x.conj()


def gauss_sum(p: int) -> CycNum:
    """The quadratic Gauss sum: the sum of psi(z^2) over z in F_p.

    Its square is (-1)^{(p-1)/2} * p.
    """
    check_odd_prime(p)
    vec = [0] * p
    for z in range(p):
        vec[(z * z) % p] += 1
    return CycNum._from_redundant(p, vec)


def embed_complex(x: CycNum, ndigits: int | None = None) -> complex:
    """Float embedding of x at zeta = exp(2*pi*i/p), optionally rounded."""
    z = x.embed()
    if ndigits is not None:
        z = complex(round(z.real, ndigits), round(z.imag, ndigits))
    return z


# -- integer-array plumbing for dense containers ---------------------
#
# A block of cyclotomic numbers is (vals, den): vals is an integer array
# of shape (..., p) in the redundant zeta-power basis, den a positive
# Python int.  The canonical block form has last zeta-column zero and
# gcd(all entries, den) = 1, so block equality is array equality.


def max_abs(vals: np.ndarray) -> int:
    """Largest |entry| as a Python int (0 for empty arrays)."""
    if vals.size == 0:
        return 0
    if vals.dtype == object:
        return max((abs(int(v)) for v in vals.flat), default=0)
    return int(np.abs(vals).max())


def accumulator(shape, bound: int) -> np.ndarray:
    """Zero array for exact accumulation: int64 if bound stays safe, else object."""
    dtype = np.int64 if bound < _INT64_SAFE else object
    if dtype is object:
        a = np.empty(shape, dtype=object)
        a[...] = 0
        return a
    return np.zeros(shape, dtype=np.int64)


def as_exact(vals: np.ndarray, bound: int) -> np.ndarray:
    """Cast vals so that products up to `bound` cannot overflow."""
    if vals.dtype != object and bound >= _INT64_SAFE:
        return vals.astype(object)
    return vals


def canonical_block(vals: np.ndarray, den: int) -> tuple[np.ndarray, int]:
    """Reduce a redundant block mod Phi_p and normalize the common denominator.

    Returns (vals, den) with last zeta-column zero, den > 0 and the gcd of
    all entries with den equal to 1.  Demotes object arrays back to int64
    when they fit.  The result never aliases the input, so containers keep
    value semantics.
    """
    vals = np.asarray(vals)
    original = vals
    if den < 0:
        vals = -vals
        den = -den
    last = vals[..., -1:]
    if max_abs(last):
        # headroom note: entries stay below 2^62, so the subtraction fits int64
        vals = vals - last
    m = max_abs(vals)
    if m == 0:
        return np.zeros(vals.shape, dtype=np.int64), 1
    if vals.dtype == object:
        g = reduce(math.gcd, (int(v) for v in vals.flat), den)
    else:
        g = math.gcd(int(np.gcd.reduce(np.abs(vals), axis=None)), den)
    if g > 1:
        if vals.dtype == object:
            vals = np.array([int(v) // g for v in vals.flat], dtype=object).reshape(vals.shape)
        else:
            vals = vals // g
        den //= g
        m //= g
    if vals.dtype == object and m < _INT64_SAFE:
        vals = vals.astype(np.int64)
    if vals.dtype != object:
        vals = np.ascontiguousarray(vals, dtype=np.int64)
    if vals is original:
        vals = vals.copy()
    return vals, den


def block_entry(vals: np.ndarray, den: int, p: int) -> CycNum:
    """CycNum from one length-p row of a block."""
    return CycNum._from_redundant(p, list(vals), den)


def rows_from_cycnums(nums, p: int) -> tuple[np.ndarray, int]:
    """Pack CycNums into a redundant (n, p) block over a common denominator."""
    nums = list(nums)
    den = 1
    for x in nums:
        if x.p != p:
            raise ValueError("mixed cyclotomic fields in one block")
        den = den * x.den // math.gcd(den, x.den)
    big = max((max_abs_int(x, den) for x in nums), default=0)
    vals = accumulator((len(nums), p), big)
    for i, x in enumerate(nums):
        scale = den // x.den
        for k, c in enumerate(x.num):
            vals[i, k] = c * scale
    return canonical_block(vals, den)


def max_abs_int(x: CycNum, den: int) -> int:
    return max((abs(c) for c in x.num), default=0) * (den // x.den)
