"""Arithmetic over a prime field F_p, its quadratic character, and Gauss sums."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

DEFAULT_TOL = 1e-9


class FieldError(ValueError):
    pass


class GoodPrimeWarning(UserWarning):
    """p is small relative to the rank; orbit parametrization theory assumes p > 6n - 3."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    return all(m % d for d in range(3, math.isqrt(m) + 1, 2))


@dataclass(frozen=True)
class FieldSpec:
    """The prime field F_p (p odd).

    ``rank`` is optional context; when given, a :class:`GoodPrimeWarning` is
    emitted if ``p <= 3 * (2 * rank - 1)``.
    """

    p: int
    rank: int | None = None

    def __post_init__(self):
        if not is_prime(self.p) or self.p < 3:
            raise FieldError("p must be an odd prime")
        if self.rank is not None and not self.is_good_prime:
            warnings.warn(
                f"p={self.p} <= {self.good_prime_bound} for rank {self.rank}",
                GoodPrimeWarning,
                stacklevel=3,
            )

    @property
    def good_prime_bound(self) -> int | None:
        return None if self.rank is None else 6 * self.rank - 3

    @property
    def is_good_prime(self) -> bool:
        return self.rank is None or self.p > self.good_prime_bound

    @property
    def minus_one_is_square(self) -> bool:
        return self.p % 4 == 1

    @property
    def nonsquare(self) -> int:
        """Smallest quadratic nonresidue, used as the representative of epsilon."""
        return _smallest_nonsquare(self.p)

    def elem(self, x: int) -> FFElem:
        return FFElem(x % self.p, self.p)


@lru_cache(maxsize=None)
def _smallest_nonsquare(p: int) -> int:
    for x in range(2, p):
        if pow(x, (p - 1) // 2, p) == p - 1:
            return x
    raise FieldError(f"no nonsquare mod {p}")


@dataclass(frozen=True)
class FFElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FFElem):
            if other.p != self.p:
                raise FieldError("mixing elements of different fields")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else FFElem(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FFElem(-self.value, self.p)

    def inverse(self) -> FFElem:
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return FFElem(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * FFElem(o, self.p).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FFElem(pow(self.value, k, self.p), self.p)

    def __int__(self):
        return self.value


def _value(x, p: int) -> int:
    return int(x) % p


def sgn(x, spec: FieldSpec) -> int:
    """Quadratic character: 0 at zero, 1 on nonzero squares, -1 otherwise."""
    v = _value(x, spec.p)
    if v == 0:
        return 0
    return 1 if pow(v, (spec.p - 1) // 2, spec.p) == 1 else -1


def additive_character(x, spec: FieldSpec) -> complex:
    return cmath.exp(2j * cmath.pi * _value(x, spec.p) / spec.p)


@lru_cache(maxsize=None)
def roots_of_unity(p: int) -> tuple[complex, ...]:
    """Table of psi(k) = exp(2 pi i k / p) for k = 0..p-1."""
    return tuple(cmath.exp(2j * cmath.pi * k / p) for k in range(p))


def gauss_sum(spec: FieldSpec) -> complex:
    """G = sum over F_p of sgn(x) psi(x), by direct summation."""
    return sum(sgn(x, spec) * additive_character(x, spec) for x in range(spec.p))


def tau(spec: FieldSpec) -> complex:
    """sgn(-1) p^{-1/2} G; equals 1 when p = 1 mod 4 and -i when p = 3 mod 4."""
    return sgn(-1, spec) * gauss_sum(spec) / math.sqrt(spec.p)


def tau_class(p_mod_4: int) -> complex:
    """Exact value of ``tau`` from the residue of p mod 4."""
    if p_mod_4 % 4 == 1:
        return 1 + 0j
    if p_mod_4 % 4 == 3:
        return -1j
    raise FieldError("p mod 4 must be 1 or 3")
