"""Lusztig functions on sp_2n(F_p) and their Fourier transforms.

A point of an algebra sp_2a x sp_2b x ... is stored as the concatenation of the
row-major entries of its factors. The Fourier transform is

    F(f)(X) = p^{-dim/2} sum_Y psi(<X, Y>) f(Y),

with <X, Y> the sum over factors of tr(X_i Y_i) and psi(x) = exp(2 pi i x / p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .ffield import DEFAULT_TOL, FieldSpec, sgn, tau
from .liealg import SymplecticPartition, decode, enumerate_sp, sp_dim
from .orbits import (
    ENUMERATION_CAP,
    OrbitLabel,
    TooLarge,
    classify_cone,
    enumerate_rational_orbits_finite,
    nilpotent_cone_codes,
)

FOURIER_CAP = 200_000
ZERO_TOL = 1e-12


class NotTriangular(ValueError):
    pass


class WrongSupport(ValueError):
    pass


class ZeroFunction(ValueError):
    pass


# -- partitions ----------------------------------------------------------------


def triangular_index(n: int) -> int | None:
    """i with i(i+1)/2 = n, or None."""
    if n < 0:
        raise ValueError("n must be >= 0")
    i = (math.isqrt(8 * n + 1) - 1) // 2
    return i if i * (i + 1) // 2 == n else None


def is_triangular(n: int) -> bool:
    return n >= 0 and triangular_index(n) is not None


def lusztig_partition(n: int) -> SymplecticPartition:
    i = triangular_index(n)
    if not i:
        raise NotTriangular(f"{n} is not a positive triangular number")
    return SymplecticPartition(tuple(range(2 * i, 0, -2)))


def extended_lusztig_partition(d1: int, d2: int) -> SymplecticPartition:
    if not (is_triangular(d1) and is_triangular(d2)):
        raise NotTriangular(f"({d1}, {d2}) are not both triangular")
    if not d1 >= d2 >= 0 or d1 < 1:
        raise ValueError("need d1 >= d2 >= 0 and d1 >= 1")
    parts = lusztig_partition(d1).parts + (lusztig_partition(d2).parts if d2 else ())
    return SymplecticPartition(tuple(sorted(parts, reverse=True)))


def is_lusztig_partition(lam: SymplecticPartition) -> bool:
    i = triangular_index(lam.rank)
    return bool(i) and lam.parts == tuple(range(2 * i, 0, -2))


def is_extended_lusztig_partition(lam: SymplecticPartition) -> bool:
    if any(x % 2 for x in lam.parts):
        return False
    mult = lam.multiplicities
    if any(m > 2 for m in mult.values()):
        return False
    # both pieces must be (2i, ..., 2) and (2j, ..., 2): multiplicities step down by one once
    i = max(lam.parts) // 2
    ms = [mult.get(2 * k, 0) for k in range(1, i + 1)]
    return all(a >= b for a, b in zip(ms, ms[1:])) and ms[-1] >= 1 and 0 not in ms


def circ_sgn(label: OrbitLabel, spec: FieldSpec) -> int:
    """Product over even parts i = 2 mod 4 of sgn((-1)^{floor(dim Q_i / 2)} det Q_i)."""
    if not is_extended_lusztig_partition(label.partition):
        raise WrongSupport(f"{label.partition} is not an (extended) Lusztig partition")
    out = 1
    for j, Q in label.nonempty_forms():
        if j % 4 == 2:
            out *= sgn(-1, spec) ** (Q.dim // 2) * Q.disc_sign
    return out


def lusztig_coefficients(n: int, spec: FieldSpec) -> dict[OrbitLabel, int]:
    """Signed coefficients of the orbit characteristic functions making up the Lusztig function."""
    lam = lusztig_partition(n)
    return {L: circ_sgn(L, spec) for L in enumerate_rational_orbits_finite(lam, spec)}


# -- class functions --------------------------------------------------------------


@dataclass(frozen=True)
class Algebra:
    """sp_{2 r_1}(F_p) x ... x sp_{2 r_k}(F_p); a single factor is sp_2n itself."""

    ranks: tuple[int, ...]
    p: int

    @property
    def dim(self) -> int:
        return sum(sp_dim(r) for r in self.ranks)

    @property
    def size(self) -> int:
        return self.p ** self.dim

    @property
    def point_length(self) -> int:
        return sum((2 * r) ** 2 for r in self.ranks)

    def points(self) -> np.ndarray:
        """All points, one flattened vector per row."""
        if self.size > FOURIER_CAP:
            raise TooLarge(f"algebra has {self.size} points (cap {FOURIER_CAP})")
        spec = FieldSpec(self.p)
        factors = [enumerate_sp(r, spec).reshape(self.p ** sp_dim(r), -1) for r in self.ranks]
        out = factors[0]
        for fac in factors[1:]:
            out = np.hstack(
                [np.repeat(out, len(fac), axis=0), np.tile(fac, (len(out), 1))]
            )
        return out

    def dual(self, pts: np.ndarray) -> np.ndarray:
        """Blockwise transpose, so that <X, Y> = X_flat . dual(Y_flat)."""
        pts = np.asarray(pts, dtype=np.int64)
        cols, o = [], 0
        for r in self.ranks:
            N = 2 * r
            blk = pts[:, o : o + N * N].reshape(-1, N, N)
            cols.append(np.swapaxes(blk, 1, 2).reshape(-1, N * N))
            o += N * N
        return np.hstack(cols)

    def split(self, point) -> list[np.ndarray]:
        out, o = [], 0
        for r in self.ranks:
            N = 2 * r
            out.append(np.asarray(point[o : o + N * N]).reshape(N, N))
            o += N * N
        return out

    def to_json(self):
        return {
            "type": "sp" if len(self.ranks) == 1 else "product",
            "ranks": list(self.ranks),
            "p": self.p,
        }


@dataclass
class ClassFunction:
    """Finitely supported function; ``values`` maps point tuples to complex numbers.

    ``coefficients`` optionally records the function as a combination of orbit
    characteristic functions (used when the cone is too large to materialize).
    """

    algebra: Algebra
    values: dict[tuple[int, ...], complex] | None = None
    coefficients: dict[OrbitLabel, int] | None = None

    def __call__(self, point) -> complex:
        return self.values.get(tuple(int(x) for x in point), 0j)

    @property
    def materialized(self) -> bool:
        return self.values is not None

    def support(self) -> tuple[np.ndarray, np.ndarray]:
        if self.values is None:
            raise TooLarge("function is held in label-coefficient form only")
        keys = sorted(self.values)
        pts = np.array(keys, dtype=np.int64).reshape(len(keys), self.algebra.point_length)
        return pts, np.array([self.values[k] for k in keys], dtype=np.complex128)

    def evaluate(self, pts: np.ndarray) -> np.ndarray:
        return np.array([self(x) for x in pts], dtype=np.complex128)

    def sup_norm(self) -> float:
        return max((abs(v) for v in self.values.values()), default=0.0)

    def to_json(self):
        out = {"algebra": self.algebra.to_json()}
        if self.values is not None:
            out["entries"] = [
                {
                    "point": [blk.reshape(-1).tolist() for blk in self.algebra.split(k)]
                    if len(self.algebra.ranks) > 1
                    else list(k),
                    "re": v.real,
                    "im": v.imag,
                }
                for k, v in sorted(self.values.items())
            ]
        if self.coefficients is not None:
            out["coefficients"] = [
                {**L.to_json(), "coefficient": c} for L, c in self.coefficients.items()
            ]
        return out


def from_arrays(algebra: Algebra, pts, vals, zero_tol: float = ZERO_TOL) -> ClassFunction:
    values = {
        tuple(int(x) for x in pt): complex(v) for pt, v in zip(pts, vals) if abs(v) > zero_tol
    }
    return ClassFunction(algebra, values)


def delta(algebra: Algebra, point) -> ClassFunction:
    return ClassFunction(algebra, {tuple(int(x) for x in point): 1 + 0j})


def lusztig_function(n: int, spec: FieldSpec, materialize: bool | None = None) -> ClassFunction:
    """The signed sum of characteristic functions of the rational orbits in the Lusztig orbit.

    ``materialize=None`` evaluates pointwise when the nilpotent cone is enumerable
    and otherwise returns label-coefficient form only.
    """
    coeffs = lusztig_coefficients(n, spec)
    algebra = Algebra((n,), spec.p)
    enumerable = spec.p ** sp_dim(n) <= ENUMERATION_CAP
    if materialize and not enumerable:
        raise TooLarge(f"sp_{2 * n}(F_{spec.p}) is too large to materialize")
    if materialize is False or not enumerable:
        return ClassFunction(algebra, None, coeffs)
    codes = nilpotent_cone_codes(n, spec)
    mats = decode(codes, n, spec.p)
    values = {}
    for X, L in zip(mats, classify_cone(n, spec, codes)):
        c = coeffs.get(L, 0)
        if c:
            values[tuple(int(x) for x in X.reshape(-1))] = complex(c)
    return ClassFunction(algebra, values, coeffs)


def product_lusztig_function(d1: int, d2: int, spec: FieldSpec) -> ClassFunction:
    """f_{d1}(Y1) * f_{d2}(Y2) on sp_{2 d1} x sp_{2 d2}."""
    if d1 < 1 or d2 < 1:
        raise ValueError("both ranks must be >= 1")
    f1 = lusztig_function(d1, spec, materialize=True)
    f2 = lusztig_function(d2, spec, materialize=True)
    values = {a + b: va * vb for a, va in f1.values.items() for b, vb in f2.values.items()}
    return ClassFunction(Algebra((d1, d2), spec.p), values)


# -- Fourier transform ------------------------------------------------------------


def fourier_transform(f: ClassFunction, spec: FieldSpec, points=None) -> ClassFunction:
    """F(f) at ``points`` (default: every point of the algebra), summing over supp(f)."""
    A = f.algebra
    xs = A.points() if points is None else np.asarray(points, dtype=np.int64)
    ys, w = f.support()
    if len(ys) == 0:
        return ClassFunction(A, {})
    vals = kernels.character_sums(xs, A.dual(ys), w, spec.p) * spec.p ** (-A.dim / 2)
    return from_arrays(A, xs, vals)


def fourier_matrix(algebra: Algebra) -> np.ndarray:
    """Dense transform matrix M[x, y] = p^{-dim/2} psi(<x, y>), computed directly with numpy."""
    pts = algebra.points()
    if len(pts) > 5000:
        raise TooLarge("dense Fourier matrix is limited to 5000 points")
    p = algebra.p
    pair = pts @ algebra.dual(pts).T % p
    return np.exp(2j * np.pi * pair / p) * p ** (-algebra.dim / 2)


def predicted_eigenvalue(n: int, spec: FieldSpec) -> complex:
    return tau(spec) ** n


@dataclass
class EigenReport:
    is_eigenfunction: bool
    eigenvalue: complex | None
    max_residual: float
    predicted: complex
    matches_prediction: bool
    tolerance: float = DEFAULT_TOL
    points_checked: int = 0
    extra: dict = field(default_factory=dict)

    def to_json(self):
        def cx(z):
            return None if z is None else {"re": z.real, "im": z.imag}

        return {
            "is_eigenfunction": self.is_eigenfunction,
            "eigenvalue": cx(self.eigenvalue),
            "max_residual": self.max_residual,
            "predicted": cx(self.predicted),
            "matches_prediction": self.matches_prediction,
            "tolerance": self.tolerance,
            "points_checked": self.points_checked,
        }


def eigen_check(f: ClassFunction, spec: FieldSpec, tol: float = DEFAULT_TOL) -> EigenReport:
    A = f.algebra
    if not f.materialized or f.sup_norm() == 0:
        raise ZeroFunction("need a nonzero materialized function")
    xs = A.points()
    Ff = fourier_transform(f, spec, xs).evaluate(xs)
    fx = f.evaluate(xs)
    k = int(np.argmax(np.abs(fx)))
    gamma = Ff[k] / fx[k]
    residual = float(np.max(np.abs(Ff - gamma * fx)))
    predicted = predicted_eigenvalue(sum(A.ranks), spec)
    ok = residual < tol
    return EigenReport(
        is_eigenfunction=ok,
        eigenvalue=complex(gamma) if ok else None,
        max_residual=residual,
        predicted=predicted,
        matches_prediction=ok and abs(gamma - predicted) < tol,
        tolerance=tol,
        points_checked=len(xs),
    )
