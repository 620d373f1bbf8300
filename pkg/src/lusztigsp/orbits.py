"""Rational nilpotent orbits of Sp_2n(F_p) on sp_2n(F_p).

An orbit is labelled by its Jordan type plus, for each even part size j, the
isometry class of the form (v, w) -> omega(X^{j-1} v, w) induced on
ker X^j modulo its radical. The brute-force oracle enumerates the nilpotent
cone and closes it under conjugation by group generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import kernels, modp
from .ffield import FieldSpec
from .liealg import (
    J,
    NotInAlgebra,
    NotNilpotent,
    SymplecticPartition,
    decode,
    encode,
    is_symplectic_lie,
    jordan_partition,
    matrix_power,
    sp_dim,
    sp_generators_with_inverses,
)
from .qforms import (
    EMPTY_FINITE,
    EMPTY_PADIC,
    FiniteFormClass,
    PadicFormClass,
    classify_gram_finite,
    finite_form_classes,
    padic_form_classes,
    padic_representative,
)

ORACLE_MAX_N = 2
ORACLE_MAX_P = 5
ENUMERATION_CAP = 5 ** 10


class TooLarge(ValueError):
    pass


class UnsupportedShape(ValueError):
    pass


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OrbitLabel:
    """(partition, forms) with ``forms[k]`` the class attached to the even part 2(k+1)."""

    partition: SymplecticPartition
    forms: tuple

    def __post_init__(self):
        lam = self.partition
        if not lam.is_admissible:
            raise ValueError(f"{lam} is not admissible")
        if len(self.forms) != lam.rank:
            raise ValueError("forms must have one entry per even size 2, 4, ..., 2n")
        for k, Q in enumerate(self.forms):
            if Q.dim != lam.multiplicity(2 * (k + 1)):
                raise ValueError(f"form for part {2 * (k + 1)} has the wrong dimension")

    @classmethod
    def build(cls, partition: SymplecticPartition, by_part: dict | None = None, padic=False):
        """Fill in empty classes for the even sizes not present in ``by_part``."""
        by_part = by_part or {}
        empty = EMPTY_PADIC if padic else EMPTY_FINITE
        forms = tuple(by_part.get(2 * (k + 1), empty) for k in range(partition.rank))
        return cls(partition, forms)

    def form(self, j: int):
        return self.forms[j // 2 - 1]

    def nonempty_forms(self) -> list[tuple[int, object]]:
        return [(2 * (k + 1), Q) for k, Q in enumerate(self.forms) if not Q.is_empty]

    def to_json(self):
        return {
            "partition": self.partition.to_json(),
            "forms": [{"part": j, **Q.to_json()} for j, Q in self.nonempty_forms()],
        }

    def __str__(self):
        inner = ", ".join(f"Q{j}={Q}" for j, Q in self.nonempty_forms())
        return f"{self.partition}[{inner}]"


# -- enumeration ---------------------------------------------------------------


def _partitions(total: int, largest: int):
    if total == 0:
        yield ()
        return
    for first in range(min(total, largest), 0, -1):
        for rest in _partitions(total - first, first):
            yield (first,) + rest


def enumerate_admissible_partitions(n: int) -> list[SymplecticPartition]:
    """Admissible partitions of 2n, lexicographically descending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = [SymplecticPartition(t) for t in _partitions(2 * n, 2 * n)]
    return [lam for lam in out if lam.is_admissible]


def enumerate_rational_orbits_finite(lam: SymplecticPartition, spec: FieldSpec) -> list[OrbitLabel]:
    if not lam.is_admissible:
        raise ValueError(f"{lam} is not admissible")
    choices = [finite_form_classes(lam.multiplicity(2 * (k + 1))) for k in range(lam.rank)]
    # square class before nonsquare, Q_2 varying slowest
    return [OrbitLabel(lam, forms) for forms in itertools.product(*choices)]


def enumerate_rational_orbits_padic(lam: SymplecticPartition, spec: FieldSpec):
    """Symbolic p-adic labels, each paired with diagonal representatives per even part.

    Returns a list of (OrbitLabel, {part: [PadicDiagEntry, ...]}).
    """
    if not lam.is_admissible:
        raise ValueError(f"{lam} is not admissible")
    choices = []
    for k in range(lam.rank):
        m = lam.multiplicity(2 * (k + 1))
        if m > 4:
            raise UnsupportedDimension(f"multiplicity {m} of part {2 * (k + 1)} exceeds 4")
        choices.append(padic_form_classes(m, spec))
    out = []
    for forms in itertools.product(*choices):
        label = OrbitLabel(lam, forms)
        reps = {j: padic_representative(Q, spec) for j, Q in label.nonempty_forms()}
        out.append((label, reps))
    return sorted(out, key=lambda t: t[0])


# -- representatives -------------------------------------------------------------


def _is_exhibited_shape(lam: SymplecticPartition) -> bool:
    from .lusztig import is_extended_lusztig_partition

    return max(lam.parts) <= 2 or is_extended_lusztig_partition(lam)


def _blocks(label: OrbitLabel, spec: FieldSpec) -> list[tuple[int, int | None]]:
    """(size, form entry) for each even block; (size, None) for each pair of odd blocks."""
    lam = label.partition
    blocks = []
    for j in sorted(lam.multiplicities):
        if j % 2 == 0:
            for a in label.form(j).diagonal(spec):
                blocks.append((j, a))
        else:
            blocks.extend([(j, None)] * (lam.multiplicity(j) // 2))
    return blocks


def representative(label: OrbitLabel, spec: FieldSpec, allow_fallback: bool = True) -> np.ndarray:
    """A matrix in the orbit named by ``label``.

    Even part 2k with form entry a occupies e_o..e_{o+k-1}, f_o..f_{o+k-1}:
    e_{i+1} -> e_i, f_i -> -f_{i+1}, f_{last} -> (-1)^{k-1} a e_{last}.
    A pair of odd parts j occupies j e's and j f's as diag(shift, -shift^T).
    Blocks appear in increasing size.
    """
    lam = label.partition
    if not allow_fallback and not _is_exhibited_shape(lam):
        raise UnsupportedShape(f"{lam} is not among the exhibited shapes")
    n, p = lam.rank, spec.p
    X = np.zeros((2 * n, 2 * n), dtype=np.int64)
    o = 0
    for size, a in _blocks(label, spec):
        k = size // 2 if a is not None else size
        for i in range(k - 1):
            X[o + i, o + i + 1] = 1
            X[n + o + i + 1, n + o + i] = -1
        if a is not None:
            last = o + k - 1
            X[last, n + last] = (-1) ** (k - 1) * a
        o += k
    return X % p


# -- classification ---------------------------------------------------------------


def invariant_gram(X, j: int, spec: FieldSpec) -> np.ndarray:
    """Gram matrix of (v, w) -> omega(X^{j-1} v, w) on a basis of ker X^j."""
    p = spec.p
    X = np.asarray(X, dtype=np.int64) % p
    K = modp.nullspace(matrix_power(X, j, p), p)
    XK = K @ matrix_power(X, j - 1, p).T % p
    return XK @ J(X.shape[0] // 2) @ K.T % p


def classify_nilpotent(X, spec: FieldSpec) -> OrbitLabel:
    X = np.asarray(X, dtype=np.int64) % spec.p
    if not is_symplectic_lie(X, spec):
        raise NotInAlgebra("matrix is not in sp_2n(F_p)")
    lam = jordan_partition(X, spec)
    forms = {}
    for j in lam.even_parts:
        Q = classify_gram_finite(invariant_gram(X, j, spec), spec)
        if Q.dim != lam.multiplicity(j):
            raise AssertionError(f"form on part {j} has dim {Q.dim}, expected {lam.multiplicity(j)}")
        forms[j] = Q
    return OrbitLabel.build(lam, forms)


# -- oracle ---------------------------------------------------------------------


def nilpotent_cone_codes(n: int, spec: FieldSpec) -> np.ndarray:
    if spec.p ** sp_dim(n) > ENUMERATION_CAP:
        raise TooLarge(f"sp_{2 * n}(F_{spec.p}) has more than {ENUMERATION_CAP} elements")
    return kernels.nilpotent_codes(n, spec.p)


@dataclass
class OrbitPartition:
    """The nilpotent cone split into conjugation orbits.

    ``codes`` is sorted; ``orbit_ids[i]`` is the orbit of ``codes[i]``.
    """

    n: int
    p: int
    codes: np.ndarray
    orbit_ids: np.ndarray
    sizes: list[int] = field(init=False)

    def __post_init__(self):
        self.sizes = np.bincount(self.orbit_ids).tolist()

    @property
    def num_orbits(self) -> int:
        return len(self.sizes)

    def index_of(self, X) -> int:
        code = encode(np.asarray(X) % self.p, self.n, self.p)
        i = int(np.searchsorted(self.codes, code))
        if i >= len(self.codes) or self.codes[i] != code:
            raise NotNilpotent("matrix is not in the nilpotent cone")
        return i

    def orbit_of(self, X) -> int:
        return int(self.orbit_ids[self.index_of(X)])

    def members(self, orbit: int) -> np.ndarray:
        return decode(self.codes[self.orbit_ids == orbit], self.n, self.p)

    def first_member(self, orbit: int) -> np.ndarray:
        i = int(np.argmax(self.orbit_ids == orbit))
        return decode(self.codes[i], self.n, self.p)


def orbit_partition_oracle(n: int, spec: FieldSpec) -> OrbitPartition:
    if n > ORACLE_MAX_N or spec.p > ORACLE_MAX_P:
        raise TooLarge(f"oracle cap is n <= {ORACLE_MAX_N} and p <= {ORACLE_MAX_P}")
    codes = nilpotent_cone_codes(n, spec)
    gens = sp_generators_with_inverses(n, spec)
    return OrbitPartition(n, spec.p, codes, kernels.conjugation_orbits(codes, gens, n, spec.p))


def classify_cone(n: int, spec: FieldSpec, codes=None) -> list[OrbitLabel]:
    """Label of every nilpotent element, aligned with ``codes``."""
    if codes is None:
        codes = nilpotent_cone_codes(n, spec)
    mats = decode(codes, n, spec.p)
    cache: dict[bytes, OrbitLabel] = {}
    out = []
    for X in mats:
        key = X.tobytes()
        if key not in cache:
            cache[key] = classify_nilpotent(X, spec)
        out.append(cache[key])
    return out


# -- atlas ------------------------------------------------------------------------


@dataclass
class OrbitAtlas:
    n: int
    p: int
    entries: list[tuple[OrbitLabel, np.ndarray, int]]

    def to_json(self):
        return {
            "n": self.n,
            "p": self.p,
            "orbits": [
                {
                    **label.to_json(),
                    "representative": rep.reshape(-1).tolist(),
                    "size": size,
                }
                for label, rep, size in self.entries
            ],
        }


def build_atlas(n: int, spec: FieldSpec, oracle: OrbitPartition | None = None) -> OrbitAtlas:
    oracle = oracle or orbit_partition_oracle(n, spec)
    entries = []
    for lam in enumerate_admissible_partitions(n):
        for label in enumerate_rational_orbits_finite(lam, spec):
            rep = representative(label, spec)
            entries.append((label, rep, oracle.sizes[oracle.orbit_of(rep)]))
    labels = [e[0] for e in entries]
    if len(set(labels)) != len(labels):
        raise AssertionError("duplicate orbit labels")
    return OrbitAtlas(n, spec.p, entries)
