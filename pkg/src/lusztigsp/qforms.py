"""Isometry classes of nondegenerate quadratic forms.

Over F_p a form is determined by (dim, sign of the discriminant). Over a p-adic
field with odd residue characteristic, entries are tracked only through their
square class in F^x/(F^x)^2 = {1, eps, pi, eps*pi}, and a form is determined by
(dim, discriminant class, Hasse invariant). The Hasse invariant is the product
of Hilbert symbols (a_i, a_j) over i < j.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import reduce

import numpy as np

from . import modp
from .ffield import FieldSpec, sgn


class FormError(ValueError):
    pass


class ZeroEntry(FormError):
    pass


class EmptyForm(FormError):
    pass


class Unrealizable(FormError):
    pass


# -- finite field ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class FiniteFormClass:
    dim: int
    disc_sign: int | None

    def __post_init__(self):
        if self.dim < 0:
            raise FormError("negative dimension")
        if (self.dim == 0) != (self.disc_sign is None):
            raise FormError("disc_sign is None exactly for the zero form")
        if self.disc_sign not in (None, 1, -1):
            raise FormError("disc_sign must be +1 or -1")

    @property
    def is_empty(self) -> bool:
        return self.dim == 0

    def diagonal(self, spec: FieldSpec) -> list[int]:
        """Diagonal representative diag(1, ..., 1, d) with d in {1, eps}."""
        if self.dim == 0:
            return []
        last = 1 if self.disc_sign == 1 else spec.nonsquare
        return [1] * (self.dim - 1) + [last]

    def to_json(self):
        return {"dim": self.dim, "disc_sign": self.disc_sign}

    def __str__(self):
        if self.dim == 0:
            return "0"
        return f"({self.dim},{'+' if self.disc_sign == 1 else '-'})"


EMPTY_FINITE = FiniteFormClass(0, None)


def finite_form_classes(dim: int) -> list[FiniteFormClass]:
    if dim == 0:
        return [EMPTY_FINITE]
    return [FiniteFormClass(dim, 1), FiniteFormClass(dim, -1)]


def classify_diagonal_finite(entries, spec: FieldSpec) -> FiniteFormClass:
    vals = [int(e) % spec.p for e in entries]
    if any(v == 0 for v in vals):
        raise ZeroEntry("diagonal entries must be nonzero")
    if not vals:
        return EMPTY_FINITE
    return FiniteFormClass(len(vals), sgn(reduce(lambda a, b: a * b % spec.p, vals), spec))


def classify_gram_finite(G, spec: FieldSpec) -> FiniteFormClass:
    """Class of the nondegenerate form induced by a symmetric Gram matrix on V / radical."""
    G = np.asarray(G, dtype=np.int64)
    if G.size == 0:
        return EMPTY_FINITE
    diag = [d for d in modp.diagonalize_symmetric(G, spec.p) if d]
    return classify_diagonal_finite(diag, spec)


def _find_isotropic(G: np.ndarray, p: int) -> np.ndarray | None:
    d = G.shape[0]
    for v in itertools.product(range(p), repeat=d):
        if not any(v):
            continue
        v = np.array(v, dtype=np.int64)
        if int(v @ G @ v) % p == 0:
            return v
    return None


def witt_decompose(entries, spec: FieldSpec) -> tuple[int, FiniteFormClass]:
    """Split off hyperbolic planes by exhaustive isotropy search.

    Returns (number of hyperbolic planes, class of the anisotropic remainder).
    """
    p = spec.p
    vals = [int(e) % p for e in entries]
    if any(v == 0 for v in vals):
        raise ZeroEntry("diagonal entries must be nonzero")
    G = np.diag(np.array(vals, dtype=np.int64))
    m = 0
    while G.shape[0] >= 2:
        v = _find_isotropic(G, p)
        if v is None:
            break
        Gv = v @ G % p
        u = np.zeros_like(v)
        u[np.nonzero(Gv)[0][0]] = 1
        # orthogonal complement of the hyperbolic plane span(v, u)
        comp = modp.nullspace(np.vstack([Gv, u @ G % p]), p)
        G = comp @ G @ comp.T % p
        m += 1
    return m, classify_gram_finite(G, spec)


# -- p-adic square classes ---------------------------------------------------


@dataclass(frozen=True, order=True)
class PadicSquareClass:
    """Element of F^x/(F^x)^2: unit part in {1, eps} times pi^valuation_parity."""

    unit_part: int = 0  # 0 -> 1, 1 -> eps
    valuation_parity: int = 0

    def __post_init__(self):
        if self.unit_part not in (0, 1) or self.valuation_parity not in (0, 1):
            raise FormError("square class components must be 0 or 1")

    def __mul__(self, other: PadicSquareClass) -> PadicSquareClass:
        return PadicSquareClass(
            self.unit_part ^ other.unit_part, self.valuation_parity ^ other.valuation_parity
        )

    def unit_sign(self) -> int:
        """sgn of the residue of the unit part."""
        return -1 if self.unit_part else 1

    def __str__(self):
        return {(0, 0): "1", (1, 0): "eps", (0, 1): "pi", (1, 1): "eps*pi"}[
            (self.unit_part, self.valuation_parity)
        ]

    def to_json(self):
        return str(self)


ONE = PadicSquareClass(0, 0)
EPS = PadicSquareClass(1, 0)
PI = PadicSquareClass(0, 1)
EPS_PI = PadicSquareClass(1, 1)
SQUARE_CLASSES = (ONE, EPS, PI, EPS_PI)


def minus_one(spec: FieldSpec) -> PadicSquareClass:
    return ONE if spec.minus_one_is_square else EPS


def hilbert_symbol(a: PadicSquareClass, b: PadicSquareClass, spec: FieldSpec) -> int:
    """Tame symbol: sgn of the residue of (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}."""
    va, vb = a.valuation_parity, b.valuation_parity
    value = 1
    if va and vb:
        value *= sgn(-1, spec)
    if vb:
        value *= a.unit_sign()
    if va:
        value *= b.unit_sign()
    return value


@dataclass(frozen=True, order=True)
class PadicDiagEntry:
    """A diagonal entry; odd valuation is written as pi^-1, as in the representatives table."""

    square_class: PadicSquareClass

    def __str__(self):
        return {(0, 0): "1", (1, 0): "eps", (0, 1): "pi^-1", (1, 1): "eps*pi^-1"}[
            (self.square_class.unit_part, self.square_class.valuation_parity)
        ]

    def residue(self, spec: FieldSpec) -> int:
        """Image in F_p after replacing pi^-1 by 1."""
        return spec.nonsquare if self.square_class.unit_part else 1

    def to_json(self):
        return str(self)


_TOKEN = re.compile(r"^(-)?(1|eps)?(?:\*?(pi(?:\^-1)?))?$")


def parse_entry(token: str, spec: FieldSpec) -> PadicDiagEntry:
    """Parse tokens such as ``1``, ``-eps``, ``pi^-1``, ``-eps*pi^-1``."""
    t = token.strip().replace(" ", "")
    m = _TOKEN.match(t)
    if not t or m is None or (m.group(2) is None and m.group(3) is None):
        raise FormError(f"cannot parse square class {token!r}")
    cls = PadicSquareClass(1 if m.group(2) == "eps" else 0, 1 if m.group(3) else 0)
    if m.group(1):
        cls = cls * minus_one(spec)
    return PadicDiagEntry(cls)


@dataclass(frozen=True, order=True)
class PadicFormClass:
    dim: int
    disc: PadicSquareClass
    hasse: int

    def __post_init__(self):
        if self.dim < 0 or self.hasse not in (1, -1):
            raise FormError("invalid p-adic form class")
        if self.dim <= 1 and self.hasse != 1:
            raise FormError("forms of dimension <= 1 have Hasse invariant +1")
        if self.dim == 0 and self.disc != ONE:
            raise FormError("the zero form has trivial discriminant")

    @property
    def is_empty(self) -> bool:
        return self.dim == 0

    def to_json(self):
        return {"dim": self.dim, "disc": str(self.disc), "hasse": self.hasse}

    def __str__(self):
        return f"({self.dim},{self.disc},{'+' if self.hasse == 1 else '-'})"


EMPTY_PADIC = PadicFormClass(0, ONE, 1)


def _square_class(e) -> PadicSquareClass:
    return e.square_class if isinstance(e, PadicDiagEntry) else e


def classify_diagonal_padic(entries, spec: FieldSpec) -> PadicFormClass:
    classes = [_square_class(e) for e in entries]
    if not classes:
        raise EmptyForm("a diagonal form needs at least one entry")
    disc = reduce(lambda a, b: a * b, classes, ONE)
    hasse = 1
    for a, b in itertools.combinations(classes, 2):
        hasse *= hilbert_symbol(a, b, spec)
    return PadicFormClass(len(classes), disc, hasse)


# Figure 1 rows as (sign, unit, valuation) triples; sign -1 means "times -1".
# Parameters t, t' range over the listed square classes.
def _figure1_templates():
    rows = []
    for t in (ONE, EPS, PI, EPS_PI):
        rows.append([(1, t)])
    # printed as diag(t, eps*t); written with -eps so that it stays anisotropic
    # when p = 3 mod 4 (identical to the printed row when p = 1 mod 4)
    for t in (ONE, PI):
        rows.append([(1, t), (-1, EPS * t)])
    for t, tp in itertools.product((ONE, EPS), repeat=2):
        rows.append([(1, t * PI), (-1, tp)])
    for t in (ONE, EPS):
        rows.append([(1, ONE), (-1, EPS), (1, t * PI)])
    for t in (ONE, EPS):
        rows.append([(1, PI), (-1, EPS_PI), (1, t)])
    rows.append([(1, ONE), (-1, EPS), (-1, PI), (1, EPS_PI)])
    return rows


def figure1_rows(spec: FieldSpec) -> list[list[PadicDiagEntry]]:
    """The table of anisotropic representatives, dims 1..4, with -1 resolved for this p."""
    m1 = minus_one(spec)
    return [
        [PadicDiagEntry(c * m1 if s < 0 else c) for s, c in row] for row in _figure1_templates()
    ]


def figure1_representative(cls: PadicFormClass, spec: FieldSpec) -> list[PadicDiagEntry]:
    if not 1 <= cls.dim <= 4:
        raise Unrealizable(f"no table row of dimension {cls.dim}")
    hits = [r for r in figure1_rows(spec) if classify_diagonal_padic(r, spec) == cls]
    if not hits:
        raise Unrealizable(f"{cls} is not an anisotropic class in the table")
    if len(hits) > 1:
        raise AssertionError(f"table rows collide for {cls}")
    return hits[0]


def hyperbolic_planes(m: int, spec: FieldSpec) -> list[PadicDiagEntry]:
    """diag(1, -1) repeated m times; diag(1, -1) is isometric to [[0, 1], [1, 0]]."""
    return [PadicDiagEntry(ONE), PadicDiagEntry(minus_one(spec))] * m


def _kernel_candidates(dim: int, spec: FieldSpec):
    """(m, row) pairs with 2m + len(row) = dim, smallest anisotropic part first."""
    for aniso_dim in range(dim % 2, min(dim, 4) + 1, 2):
        m = (dim - aniso_dim) // 2
        if aniso_dim == 0:
            yield m, []
            continue
        for row in figure1_rows(spec):
            if len(row) == aniso_dim:
                yield m, row


def _kernel_for_class(cls: PadicFormClass, spec: FieldSpec) -> tuple[int, list[PadicDiagEntry]]:
    for m, row in _kernel_candidates(cls.dim, spec):
        if m == 0 and not row:
            continue
        if classify_diagonal_padic(hyperbolic_planes(m, spec) + row, spec) == cls:
            return m, row
    raise Unrealizable(f"{cls} is not realizable")


def padic_witt_decompose(entries, spec: FieldSpec) -> tuple[int, list[PadicDiagEntry]]:
    """(hyperbolic plane count, anisotropic table row) of a diagonal p-adic form."""
    return _kernel_for_class(classify_diagonal_padic(entries, spec), spec)


def padic_form_classes(dim: int, spec: FieldSpec) -> list[PadicFormClass]:
    """All isometry classes of nondegenerate forms of the given dimension, sorted."""
    if dim == 0:
        return [EMPTY_PADIC]
    return sorted(
        {classify_diagonal_padic(hyperbolic_planes(m, spec) + row, spec)
         for m, row in _kernel_candidates(dim, spec)}
    )


def padic_representative(cls: PadicFormClass, spec: FieldSpec) -> list[PadicDiagEntry]:
    """Hyperbolic planes followed by the anisotropic table row."""
    if cls.dim == 0:
        return []
    m, row = _kernel_for_class(cls, spec)
    return hyperbolic_planes(m, spec) + row
