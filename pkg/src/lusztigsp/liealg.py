"""The symplectic Lie algebra sp_2n(F_p) as 2n x 2n integer matrices.

Matrices are plain ``numpy`` int64 arrays with entries in [0, p). The standard
form is omega(x, y) = x^T J y with J = [[0, I_n], [-I_n, 0]].
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import modp
from .ffield import FieldSpec


class DimensionMismatch(ValueError):
    pass


class NotNilpotent(ValueError):
    pass


class NotInAlgebra(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SymplecticPartition:
    """A partition of 2n written as a non-increasing tuple of parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        object.__setattr__(self, "parts", parts)
        if any(x <= 0 for x in parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be non-increasing")
        if sum(parts) % 2:
            raise ValueError("parts must sum to an even number")

    @classmethod
    def of(cls, *parts: int) -> SymplecticPartition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def rank(self) -> int:
        return sum(self.parts) // 2

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self.parts))

    def multiplicity(self, j: int) -> int:
        return self.multiplicities.get(j, 0)

    @property
    def is_admissible(self) -> bool:
        """Every odd part occurs an even number of times."""
        return all(m % 2 == 0 for j, m in self.multiplicities.items() if j % 2)

    @property
    def even_parts(self) -> list[int]:
        """Distinct even part sizes in increasing order."""
        return sorted(j for j in self.multiplicities if j % 2 == 0)

    def to_json(self):
        return list(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def J(n: int) -> np.ndarray:
    I = np.eye(n, dtype=np.int64)
    Z = np.zeros((n, n), dtype=np.int64)
    return np.block([[Z, I], [-I, Z]])


def _check_even_square(X) -> int:
    X = np.asarray(X)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] % 2:
        raise DimensionMismatch(f"expected a square matrix of even size, got {X.shape}")
    return X.shape[0] // 2


def is_symplectic_lie(X, spec: FieldSpec) -> bool:
    """X^T J + J X = 0 mod p."""
    n = _check_even_square(X)
    X = np.asarray(X, dtype=np.int64)
    return not ((X.T @ J(n) + J(n) @ X) % spec.p).any()


def is_symplectic_group(g, spec: FieldSpec) -> bool:
    n = _check_even_square(g)
    g = np.asarray(g, dtype=np.int64)
    return not ((g.T @ J(n) @ g - J(n)) % spec.p).any()


def omega(x, y, spec: FieldSpec) -> int:
    x = np.asarray(x, dtype=np.int64)
    return int(x @ J(len(x) // 2) @ np.asarray(y, dtype=np.int64)) % spec.p


def trace_form(X, Y, spec: FieldSpec) -> int:
    X, Y = np.asarray(X, dtype=np.int64), np.asarray(Y, dtype=np.int64)
    if X.shape != Y.shape:
        raise DimensionMismatch("trace_form needs matrices of equal size")
    return int(np.einsum("ij,ji->", X, Y)) % spec.p


def matrix_power(X, k: int, p: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64) % p
    out = np.eye(X.shape[0], dtype=np.int64)
    for _ in range(k):
        out = out @ X % p
    return out


def is_nilpotent(X, spec: FieldSpec) -> bool:
    X = np.asarray(X, dtype=np.int64)
    return not matrix_power(X, X.shape[0], spec.p).any()


def rank_sequence(X, spec: FieldSpec) -> list[int]:
    """[rank X^0, rank X^1, ..., rank X^N] with N the matrix size."""
    X = np.asarray(X, dtype=np.int64) % spec.p
    N = X.shape[0]
    ranks, P = [N], np.eye(N, dtype=np.int64)
    for _ in range(N):
        P = P @ X % spec.p
        ranks.append(modp.rank(P, spec.p))
    return ranks


def jordan_partition(X, spec: FieldSpec) -> SymplecticPartition:
    """Jordan type of a nilpotent matrix from its rank sequence."""
    _check_even_square(X)
    r = rank_sequence(X, spec)
    if r[-1] != 0:
        raise NotNilpotent("matrix is not nilpotent")
    # number of blocks of size >= k is r[k-1] - r[k]
    at_least = [r[k - 1] - r[k] for k in range(1, len(r))]
    parts = []
    for k, cnt in enumerate(at_least, start=1):
        nxt = at_least[k] if k < len(at_least) else 0
        parts.extend([k] * (cnt - nxt))
    return SymplecticPartition(tuple(sorted(parts, reverse=True)))


# -- coordinates -------------------------------------------------------------


def sp_dim(n: int) -> int:
    return n * (2 * n + 1)


def _upper_indices(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def from_coords(coords, n: int, p: int) -> np.ndarray:
    """Matrix [[A, B], [C, -A^T]] from (A row-major, B upper, C upper) coordinates.

    ``coords`` may carry leading batch dimensions.
    """
    coords = np.asarray(coords, dtype=np.int64)
    batch = coords.shape[:-1]
    X = np.zeros(batch + (2 * n, 2 * n), dtype=np.int64)
    A = coords[..., : n * n].reshape(batch + (n, n))
    X[..., :n, :n] = A
    X[..., n:, n:] = -np.swapaxes(A, -1, -2)
    k = n * n
    for i, j in _upper_indices(n):
        X[..., i, n + j] = X[..., j, n + i] = coords[..., k]
        k += 1
    for i, j in _upper_indices(n):
        X[..., n + i, j] = X[..., n + j, i] = coords[..., k]
        k += 1
    return X % p


def to_coords(X, n: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    batch = X.shape[:-2]
    A = X[..., :n, :n].reshape(batch + (n * n,))
    ups = _upper_indices(n)
    B = np.stack([X[..., i, n + j] for i, j in ups], axis=-1)
    C = np.stack([X[..., n + i, j] for i, j in ups], axis=-1)
    return np.concatenate([A, B, C], axis=-1)


def encode(X, n: int, p: int) -> np.ndarray | int:
    """Integer code sum_k c_k p^k of the coordinates of X (batched)."""
    c = to_coords(X, n)
    weights = p ** np.arange(sp_dim(n), dtype=np.int64)
    out = (c % p) @ weights
    return int(out) if np.ndim(out) == 0 else out


def decode(codes, n: int, p: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    digits = (codes[..., None] // p ** np.arange(sp_dim(n), dtype=np.int64)) % p
    return from_coords(digits, n, p)


def enumerate_sp(n: int, spec: FieldSpec) -> np.ndarray:
    """All elements of sp_2n(F_p), shape (p^dim, 2n, 2n), in code order."""
    return decode(np.arange(spec.p ** sp_dim(n), dtype=np.int64), n, spec.p)


# -- the group ---------------------------------------------------------------


def _root_vectors(n: int) -> list[np.ndarray]:
    """Root vectors for +/- the simple roots of C_n, as square-zero matrices."""
    N = 2 * n

    def E(i, j):
        M = np.zeros((N, N), dtype=np.int64)
        M[i, j] = 1
        return M

    out = []
    for i in range(n - 1):
        out.append(E(i, i + 1) - E(n + i + 1, n + i))
        out.append(E(i + 1, i) - E(n + i, n + i + 1))
    out.append(E(n - 1, 2 * n - 1))
    out.append(E(2 * n - 1, n - 1))
    return out


def sp_generators(n: int, spec: FieldSpec) -> list[np.ndarray]:
    """Elementary symplectic matrices I + E for root vectors E of the +/- simple roots.

    Over a prime field these generate Sp_2n(F_p).
    """
    I = np.eye(2 * n, dtype=np.int64)
    return [(I + E) % spec.p for E in _root_vectors(n)]


def sp_generators_with_inverses(n: int, spec: FieldSpec) -> list[tuple[np.ndarray, np.ndarray]]:
    I = np.eye(2 * n, dtype=np.int64)
    return [((I + E) % spec.p, (I - E) % spec.p) for E in _root_vectors(n)]


def group_closure_order(gens, spec: FieldSpec, cap: int = 10**6) -> int:
    """Order of the group generated by ``gens``, by breadth-first closure."""
    p = spec.p
    N = gens[0].shape[0]
    start = np.eye(N, dtype=np.int64)
    seen = {start.tobytes()}
    frontier = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = g @ h % p
                key = gh.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(gh)
        if len(seen) > cap:
            raise ValueError(f"closure exceeds cap {cap}")
        frontier = nxt
    return len(seen)


def random_symplectic(n: int, spec: FieldSpec, rng: np.random.Generator, length: int = 40):
    """A random word in the generators; returns (g, g^-1)."""
    pairs = sp_generators_with_inverses(n, spec)
    I = np.eye(2 * n, dtype=np.int64)
    g, gi = I.copy(), I.copy()
    for k in rng.integers(0, len(pairs), size=length):
        a, ai = pairs[k]
        g = g @ a % spec.p
        gi = ai @ gi % spec.p
    return g, gi


def conjugate(g, X, g_inv, spec: FieldSpec) -> np.ndarray:
    return np.asarray(g) @ np.asarray(X) @ np.asarray(g_inv) % spec.p
