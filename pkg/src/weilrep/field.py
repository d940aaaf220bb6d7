"""Arithmetic of the prime field F_p for an odd prime p, and the Legendre character."""

from __future__ import annotations

from functools import lru_cache


class FieldError(ValueError):
    """Bad modulus or an operation outside its domain (e.g. inverting 0)."""


@lru_cache(maxsize=None)
def check_odd_prime(p: int) -> int:
    """Return p if it is an odd prime, else raise FieldError.

    Trial division: moduli here are desk-scale (p = 3, 5, 7, ...).
    """
    if not isinstance(p, int) or p < 3 or p % 2 == 0:
        raise FieldError(f"p must be an odd prime, got {p!r}")
    d = 3
    while d * d <= p:
        if p % d == 0:
            raise FieldError(f"p must be an odd prime, got {p} = {d} * {p // d}")
        d += 2
    return p


def fp_inv(a: "FpElement | int", p: int | None = None) -> "FpElement":
    """Multiplicative inverse in F_p; raises FieldError on 0."""
    a = _coerce(a, p)
    if a.value == 0:
        raise FieldError(f"0 has no inverse mod {a.p}")
    return FpElement(pow(a.value, -1, a.p), a.p)


def legendre(a: "FpElement | int", p: int | None = None) -> int:
    """Legendre character sigma(a) in {+1, -1}, via Euler's criterion.

    sigma is the unique quadratic character of F_p^x; it is undefined at 0.
    """
    a = _coerce(a, p)
    if a.value == 0:
        raise FieldError(f"Legendre character is undefined at 0 mod {a.p}")
    e = pow(a.value, (a.p - 1) // 2, a.p)
    return -1 if e == a.p - 1 else 1


def half(p: int) -> int:
    """The residue 1/2 mod p (exists since p is odd)."""
    check_odd_prime(p)
    return pow(2, -1, p)


def quarter(p: int) -> int:
    """The residue 1/4 mod p."""
    check_odd_prime(p)
    return pow(4, -1, p)


def _coerce(a: "FpElement | int", p: int | None) -> "FpElement":
    if isinstance(a, FpElement):
        return a
    if p is None:
        raise FieldError("an int argument needs an explicit modulus p")
    return FpElement(a, p)


class FpElement:
    """A residue in [0, p), p an odd prime validated at construction."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        check_odd_prime(p)
        self.value = int(value) % p
        self.p = p

    def _same_field(self, other: "FpElement | int") -> "FpElement":
        if isinstance(other, int):
            return FpElement(other, self.p)
        if other.p != self.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")
        return other

    def __add__(self, other):
        other = self._same_field(other)
        return FpElement(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same_field(other)
        return FpElement(self.value - other.value, self.p)

    def __rsub__(self, other):
        return self._same_field(other) - self

    def __mul__(self, other):
        other = self._same_field(other)
        return FpElement(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FpElement(-self.value, self.p)

    def __pow__(self, k: int):
        return FpElement(pow(self.value, k, self.p), self.p)

    def inv(self) -> "FpElement":
        return fp_inv(self)

    def legendre(self) -> int:
        return legendre(self)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == other % self.p
        return isinstance(other, FpElement) and self.p == other.p and self.value == other.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FpElement({self.value}, p={self.p})"
