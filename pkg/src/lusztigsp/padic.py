"""p-adic Lusztig functions, Lusztig distributions, and the counting census.

Vertices of the extended C_n Dynkin diagram are node indices 0..n. Deleting
node i leaves C_i x C_{n-i}, so the reductive quotient there is
sp_2i x sp_2(n-i); nodes 0 and n are the two hyperspecial classes.
Everything here is exact integer combinatorics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .ffield import tau_class
from .lusztig import is_triangular

DEFAULT_N_MAX = 500


class IndexOutOfRange(ValueError):
    pass


@dataclass(frozen=True, order=True)
class VertexDescriptor:
    n: int
    index: int

    def __post_init__(self):
        if not 0 <= self.index <= self.n:
            raise IndexOutOfRange(f"node {self.index} is not in 0..{self.n}")

    @property
    def is_hyperspecial(self) -> bool:
        return self.index in (0, self.n)


def reductive_quotient(v: VertexDescriptor) -> tuple[int, int]:
    """Sizes (2i, 2(n - i)) of the symplectic factors; hyperspecial nodes give (2n, 0)."""
    if v.is_hyperspecial:
        return (2 * v.n, 0)
    return (2 * v.index, 2 * (v.n - v.index))


@dataclass(frozen=True, order=True)
class PadicLusztigDescriptor:
    vertex: VertexDescriptor
    deltas: tuple[int, int]

    def __post_init__(self):
        d1, d2 = self.deltas
        if not (is_triangular(d1) and is_triangular(d2)):
            raise ValueError(f"{self.deltas} are not both triangular")
        if d1 + d2 != self.vertex.n:
            raise ValueError("deltas must sum to n")
        if d2 == 0:
            if not self.vertex.is_hyperspecial:
                raise ValueError("a single Lusztig factor needs a hyperspecial vertex")
        elif self.vertex.index != d1:
            raise ValueError("vertex index must equal the first delta")

    def ordered_pair(self) -> tuple[int, int]:
        """The ordered triangular representation of n this descriptor accounts for."""
        d1, d2 = self.deltas
        if d2 == 0 and self.vertex.index == self.vertex.n:
            return (0, d1)
        return (d1, d2)

    @property
    def is_self_paired(self) -> bool:
        return self.deltas[0] == self.deltas[1]

    def to_json(self):
        return {
            "n": self.vertex.n,
            "vertex": self.vertex.index,
            "quotient": list(reductive_quotient(self.vertex)),
            "deltas": list(self.deltas),
        }


def triangular_numbers_upto(n: int) -> list[int]:
    out, k = [], 0
    while k * (k + 1) // 2 <= n:
        out.append(k * (k + 1) // 2)
        k += 1
    return out


def catalog_padic_lusztig(n: int) -> list[PadicLusztigDescriptor]:
    """One descriptor per p-adic Lusztig function up to conjugacy, ordered by vertex."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    if is_triangular(n):
        out.append(PadicLusztigDescriptor(VertexDescriptor(n, 0), (n, 0)))
        out.append(PadicLusztigDescriptor(VertexDescriptor(n, n), (n, 0)))
    for d in triangular_numbers_upto(n):
        if 1 <= d < n and is_triangular(n - d):
            out.append(PadicLusztigDescriptor(VertexDescriptor(n, d), (d, n - d)))
    return sorted(out, key=lambda x: x.vertex.index)


def triangular_reps(n: int) -> list[tuple[int, int]]:
    """Ordered index pairs (a, b), a, b >= 0, with T_a + T_b = n, by brute force."""
    if n < 0:
        raise ValueError("n must be >= 0")
    tri = triangular_numbers_upto(n)
    return [(a, b) for a, ta in enumerate(tri) for b, tb in enumerate(tri) if ta + tb == n]


def divisor_census(n: int) -> tuple[int, int]:
    """(d1, d3): divisors of 8n + 2 congruent to 1 and 3 mod 4."""
    m = 8 * n + 2
    divs = [d for d in range(1, m + 1) if m % d == 0]
    return sum(d % 4 == 1 for d in divs), sum(d % 4 == 3 for d in divs)


def odd_square_reps(n: int) -> int:
    """Ordered pairs of positive odd (x, y) with x^2 + y^2 = 8n + 2."""
    m = 8 * n + 2
    count = 0
    for x in range(1, math.isqrt(m) + 1, 2):
        r = m - x * x
        y = math.isqrt(r)
        if y * y == r and y % 2 == 1:
            count += 1
    return count


def theorem_formula_dim(n: int) -> int:
    """The printed piecewise dimension formula, for comparison only."""
    d1, d3 = divisor_census(n)
    return 2 * (d1 - d3 + 1) if is_triangular(n) else 2 * (d1 - d3)


def stable_subspace_dim(n: int) -> int:
    """1 when n is twice a triangular number, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return int(n % 2 == 0 and is_triangular(n // 2))


_PHASES = {1 + 0j: "1", -1 + 0j: "-1", 1j: "i", -1j: "-i"}


def eigenvalue_symbolic(n: int, p_mod_4: int) -> complex:
    """tau^n with tau = 1 (p = 1 mod 4) or -i (p = 3 mod 4), exact in {1, -1, i, -i}."""
    if tau_class(p_mod_4) == 1:
        return 1 + 0j
    return (1 + 0j, -1j, -1 + 0j, 1j)[n % 4]


def phase_name(z: complex) -> str:
    return _PHASES[complex(round(z.real), round(z.imag))]


@dataclass(frozen=True)
class LusztigDistribution:
    """Symbolic record of the eigen-distribution attached to a p-adic Lusztig function."""

    descriptor: PadicLusztigDescriptor
    eigenvalue_class: complex
    stable: bool

    def to_json(self):
        return {
            **self.descriptor.to_json(),
            "eigenvalue": phase_name(self.eigenvalue_class),
            "stable": self.stable,
        }


def lusztig_distributions(n: int, p_mod_4: int) -> list[LusztigDistribution]:
    """Basis of the Fourier eigenspace: one distribution per catalog entry."""
    gamma = eigenvalue_symbolic(n, p_mod_4)
    return [
        LusztigDistribution(d, gamma, d.is_self_paired) for d in catalog_padic_lusztig(n)
    ]


@dataclass(frozen=True)
class CensusRow:
    n: int
    enum_count: int
    grosswald_count: int
    d1: int
    d3: int
    odd_square_count: int
    theorem_formula_value: int
    stable_dim: int

    @property
    def counts_agree(self) -> bool:
        return self.enum_count == self.grosswald_count == self.d1 - self.d3 == self.odd_square_count

    @property
    def mismatch(self) -> bool:
        """The printed formula disagrees with the enumeration."""
        return self.theorem_formula_value != self.enum_count

    FIELDS = (
        "n",
        "enum_count",
        "grosswald_count",
        "d1",
        "d3",
        "odd_square_count",
        "theorem_formula_value",
        "stable_dim",
        "mismatch",
    )

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def census_row(n: int) -> CensusRow:
    d1, d3 = divisor_census(n)
    row = CensusRow(
        n=n,
        enum_count=len(catalog_padic_lusztig(n)),
        grosswald_count=len(triangular_reps(n)),
        d1=d1,
        d3=d3,
        odd_square_count=odd_square_reps(n),
        theorem_formula_value=theorem_formula_dim(n),
        stable_dim=stable_subspace_dim(n),
    )
    if not row.counts_agree:
        raise AssertionError(f"counting identities fail at n={n}: {row}")
    return row


def census(n_max: int = DEFAULT_N_MAX) -> list[CensusRow]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [census_row(n) for n in range(1, n_max + 1)]
